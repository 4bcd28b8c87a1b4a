#include "ucq/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "ucq/errors.hpp"

namespace ucq {

namespace {

struct Line {
    int number;
    std::string text;
};

std::vector<Line> significant_lines(const std::string& text) {
    std::vector<Line> lines;
    std::istringstream in(text);
    std::string raw;
    int number = 0;
    while (std::getline(in, raw)) {
        ++number;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        size_t begin = raw.find_first_not_of(" \t\r");
        if (begin == std::string::npos) continue;
        size_t end = raw.find_last_not_of(" \t\r");
        lines.push_back({number, raw.substr(begin, end - begin + 1)});
    }
    return lines;
}

bool identifier_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool identifier_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<std::string> split_tokens(const std::string& s) {
    std::vector<std::string> tokens;
    std::istringstream in(s);
    std::string token;
    while (in >> token) tokens.push_back(token);
    return tokens;
}

struct ParsedAtom {
    std::string relation;
    std::vector<std::string> arguments;
};

// R(v1, v2, ...) with optional whitespace
ParsedAtom parse_atom(const Line& line) {
    const std::string& s = line.text;
    size_t i = 0;
    auto fail = [&](const std::string& message) -> ParseError {
        return ParseError(line.number, static_cast<int>(i) + 1, message);
    };
    auto skip_space = [&] {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    };
    auto read_identifier = [&]() -> std::string {
        if (i >= s.size() || !identifier_start(s[i])) throw fail("expected an identifier");
        size_t start = i;
        while (i < s.size() && identifier_char(s[i])) ++i;
        return s.substr(start, i - start);
    };
    ParsedAtom atom;
    atom.relation = read_identifier();
    skip_space();
    if (i >= s.size() || s[i] != '(') throw fail("expected '('");
    ++i;
    while (true) {
        skip_space();
        atom.arguments.push_back(read_identifier());
        skip_space();
        if (i < s.size() && s[i] == ',') { ++i; continue; }
        if (i < s.size() && s[i] == ')') { ++i; break; }
        throw fail("expected ',' or ')'");
    }
    skip_space();
    if (i != s.size()) throw fail("trailing characters after the atom");
    return atom;
}

void check_identifier(const std::string& name, int line) {
    if (name.empty() || !identifier_start(name[0]) ||
        !std::all_of(name.begin(), name.end(), identifier_char))
        throw ParseError(line, 1, "'" + name + "' is not a valid identifier");
}

}  // namespace

Ucq parse_query_file(const std::string& text) {
    auto lines = significant_lines(text);
    if (lines.empty()) throw ParseError(1, 1, "empty query file");
    auto head = split_tokens(lines[0].text);
    if (head.empty() || head[0] != "FREE")
        throw ParseError(lines[0].number, 1, "query files start with a FREE line");
    std::vector<std::string> free_names(head.begin() + 1, head.end());
    for (const auto& n : free_names) check_identifier(n, lines[0].number);
    {
        std::set<std::string> seen;
        for (const auto& n : free_names)
            if (!seen.insert(n).second)
                throw ParseError(lines[0].number, 1, "duplicate free variable '" + n + "'");
    }

    std::vector<std::vector<ParsedAtom>> blocks;
    for (size_t li = 1; li < lines.size(); ++li) {
        if (lines[li].text == "CQ") {
            blocks.push_back({});
            continue;
        }
        if (blocks.empty())
            throw ParseError(lines[li].number, 1, "expected a CQ line before any atom");
        blocks.back().push_back(parse_atom(lines[li]));
    }
    if (blocks.empty()) throw ParseError(lines.back().number, 1, "no CQ block found");

    // shared signature over all blocks, arities must be consistent
    std::map<std::string, int> arities;
    for (const auto& block : blocks)
        for (const auto& atom : block) {
            auto [it, inserted] = arities.try_emplace(atom.relation, atom.arguments.size());
            if (!inserted && it->second != static_cast<int>(atom.arguments.size()))
                throw ParseError(1, 1, "relation '" + atom.relation + "' used with arities " +
                                           std::to_string(it->second) + " and " +
                                           std::to_string(atom.arguments.size()));
        }
    std::vector<RelationSymbol> symbols;
    for (const auto& [name, arity] : arities) symbols.push_back({name, arity});
    Signature signature{symbols};

    std::vector<Structure> disjuncts;
    for (const auto& block : blocks) {
        StructureBuilder builder(signature);
        for (const auto& n : free_names) builder.add_element(n);
        for (const auto& atom : block) builder.add_tuple_by_names(atom.relation, atom.arguments);
        disjuncts.push_back(builder.build());
    }
    return Ucq(std::move(disjuncts), std::move(free_names));
}

std::string serialize_query_file(const Ucq& psi) {
    std::string out = "FREE";
    for (const auto& n : psi.free_names()) out += " " + n;
    out += "\n";
    for (size_t j = 0; j < psi.size(); ++j) {
        out += "CQ\n";
        const Structure& d = psi.disjunct(j);
        for (int sym = 0; sym < d.signature().size(); ++sym)
            for (const auto& t : d.relation(sym)) {
                out += d.signature().symbol(sym).name + "(";
                for (size_t p = 0; p < t.size(); ++p) {
                    if (p) out += ", ";
                    out += d.element_name(t[p]);
                }
                out += ")\n";
            }
    }
    return out;
}

Structure parse_database_file(const std::string& text) {
    auto lines = significant_lines(text);
    std::vector<ParsedAtom> facts;
    std::vector<std::string> domain;
    for (const auto& line : lines) {
        auto tokens = split_tokens(line.text);
        if (!tokens.empty() && tokens[0] == "DOMAIN") {
            for (size_t i = 1; i < tokens.size(); ++i) {
                check_identifier(tokens[i], line.number);
                domain.push_back(tokens[i]);
            }
            continue;
        }
        facts.push_back(parse_atom(line));
    }
    std::map<std::string, int> arities;
    for (const auto& fact : facts) {
        auto [it, inserted] = arities.try_emplace(fact.relation, fact.arguments.size());
        if (!inserted && it->second != static_cast<int>(fact.arguments.size()))
            throw ParseError(1, 1, "relation '" + fact.relation + "' used with arities " +
                                       std::to_string(it->second) + " and " +
                                       std::to_string(fact.arguments.size()));
    }
    std::vector<RelationSymbol> symbols;
    for (const auto& [name, arity] : arities) symbols.push_back({name, arity});
    StructureBuilder builder(Signature{symbols});
    for (const auto& c : domain) builder.add_element(c);
    for (const auto& fact : facts) builder.add_tuple_by_names(fact.relation, fact.arguments);
    return builder.build();
}

std::string serialize_database_file(const Structure& db) {
    std::string out = "DOMAIN";
    for (const auto& n : db.element_names()) out += " " + n;
    out += "\n";
    for (int sym = 0; sym < db.signature().size(); ++sym)
        for (const auto& t : db.relation(sym)) {
            out += db.signature().symbol(sym).name + "(";
            for (size_t p = 0; p < t.size(); ++p) {
                if (p) out += ", ";
                out += db.element_name(t[p]);
            }
            out += ")\n";
        }
    return out;
}

ParsedComplex parse_complex_file(const std::string& text) {
    auto lines = significant_lines(text);
    if (lines.empty()) throw ParseError(1, 1, "empty complex file");
    auto head = split_tokens(lines[0].text);
    if (head.empty() || head[0] != "GROUND")
        throw ParseError(lines[0].number, 1, "complex files start with a GROUND line");
    std::vector<std::string> ground(head.begin() + 1, head.end());
    std::vector<std::vector<std::string>> facets;
    for (size_t li = 1; li < lines.size(); ++li) {
        auto tokens = split_tokens(lines[li].text);
        if (tokens.empty() || tokens[0] != "FACET")
            throw ParseError(lines[li].number, 1, "expected a FACET line");
        if (tokens.size() == 1) throw ParseError(lines[li].number, 1, "empty facet");
        facets.push_back({tokens.begin() + 1, tokens.end()});
    }
    int discarded = 0;
    Complex complex = Complex::from_facets(std::move(ground), facets, &discarded);
    return {std::move(complex), discarded};
}

std::string serialize_complex_file(const Complex& c) {
    std::string out = "GROUND";
    for (const auto& g : c.ground()) out += " " + g;
    out += "\n";
    for (uint64_t f : c.facets()) {
        out += "FACET";
        for (int i = 0; i < c.ground_size(); ++i)
            if (f & (uint64_t(1) << i)) out += " " + c.ground_name(i);
        out += "\n";
    }
    return out;
}

std::string format_query(const ConjunctiveQuery& q) {
    std::string out;
    auto quantified = q.quantified_elements();
    if (!quantified.empty()) {
        out += "exists";
        for (ElementId e : quantified) out += " " + q.body().element_name(e);
        out += ": ";
    }
    bool first = true;
    const Structure& body = q.body();
    for (int sym = 0; sym < body.signature().size(); ++sym)
        for (const auto& t : body.relation(sym)) {
            if (!first) out += " & ";
            first = false;
            out += body.signature().symbol(sym).name + "(";
            for (size_t p = 0; p < t.size(); ++p) {
                if (p) out += ",";
                out += body.element_name(t[p]);
            }
            out += ")";
        }
    if (first) out += "<no atoms>";
    std::vector<ElementId> isolated_free;
    for (ElementId e : body.isolated_elements())
        if (q.is_free(e)) isolated_free.push_back(e);
    if (!isolated_free.empty()) {
        out += " [isolated:";
        for (ElementId e : isolated_free) out += " " + body.element_name(e);
        out += "]";
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    out << content;
}

}  // namespace ucq
