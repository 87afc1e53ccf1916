#include "fillvol/chain_complex.hpp"

#include <json.hpp>

#include <algorithm>
#include <deque>
#include <fstream>
#include <limits>
#include <map>

namespace fillvol {

namespace {

using nlohmann::json;

Ring ring_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind")) throw SchemaError("ring: missing kind");
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "integers") return Ring::integers();
    if (kind == "rationals") return Ring::rationals();
    if (kind == "modular") return Ring::modular(j.at("m").get<long>());
    if (kind == "prime_field") return Ring::prime_field(j.at("p").get<long>());
    if (kind == "table") {
        RingTables t;
        t.add = j.at("add").get<std::vector<std::vector<int>>>();
        t.mul = j.at("mul").get<std::vector<std::vector<int>>>();
        t.zero = j.at("zero").get<int>();
        t.one = j.at("one").get<int>();
        return Ring::table(std::move(t));
    }
    throw SchemaError("unknown ring kind: " + kind);
}

json ring_to_json(const Ring& r) {
    switch (r.kind()) {
        case RingKind::Integers:
            return {{"kind", "integers"}};
        case RingKind::Rationals:
            return {{"kind", "rationals"}};
        case RingKind::Modular:
            return {{"kind", "modular"}, {"m", r.modulus()}};
        case RingKind::PrimeField:
            return {{"kind", "prime_field"}, {"p", r.modulus()}};
        case RingKind::Table:
            throw UnsupportedError("saving table rings is not implemented");
    }
    throw SchemaError("unreachable");
}

Rat rat_from_json(const json& j) {
    if (j.is_number_integer()) return Rat(j.get<long long>());
    if (j.is_string()) return rat_from_string(j.get<std::string>());
    throw SchemaError("expected integer or \"p/q\" string");
}

json rat_to_json(const Rat& x) {
    if (boost::multiprecision::denominator(x) == 1 &&
        boost::multiprecision::abs(boost::multiprecision::numerator(x)) <
            Int(std::numeric_limits<long long>::max()))
        return json(static_cast<long long>(boost::multiprecision::numerator(x)));
    return json(rat_to_string(x));
}

Norm norm_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind")) throw SchemaError("norm: missing kind");
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "absolute") return Norm::absolute();
    if (kind == "discrete") return Norm::discrete();
    if (kind == "scaled")
        return Norm::scaled(norm_from_json(j.at("base")), rat_from_json(j.at("factor")));
    if (kind == "symmetrized") return Norm::symmetrized(norm_from_json(j.at("base")));
    if (kind == "table") {
        std::vector<Rat> values;
        for (const auto& v : j.at("values")) values.push_back(rat_from_json(v));
        return Norm::from_table(std::move(values));
    }
    throw SchemaError("unknown norm kind: " + kind);
}

json norm_to_json(const Norm& n) {
    switch (n.kind) {
        case NormKind::Absolute:
            return {{"kind", "absolute"}};
        case NormKind::Discrete:
            return {{"kind", "discrete"}};
        case NormKind::Scaled:
            return {{"kind", "scaled"}, {"factor", rat_to_json(n.factor)},
                    {"base", norm_to_json(*n.base)}};
        case NormKind::Symmetrized:
            return {{"kind", "symmetrized"}, {"base", norm_to_json(*n.base)}};
        case NormKind::Table: {
            json values = json::array();
            for (const auto& v : n.table) values.push_back(rat_to_json(v));
            return {{"kind", "table"}, {"values", values}};
        }
    }
    throw SchemaError("unreachable");
}

std::vector<GroupElem> gens_from_json(const json& j) {
    std::vector<GroupElem> out;
    for (const auto& g : j) out.push_back(GroupElem{g.get<std::vector<long long>>()});
    return out;
}

GroupModel group_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind")) throw SchemaError("group: missing kind");
    std::string kind = j.at("kind").get<std::string>();
    std::vector<GroupElem> gens;
    if (j.contains("generators")) gens = gens_from_json(j.at("generators"));
    if (kind == "trivial") return GroupModel::trivial();
    if (kind == "cyclic") return GroupModel::cyclic(j.at("k").get<long long>(), gens);
    if (kind == "free_abelian") return GroupModel::free_abelian(j.at("rank").get<int>(), gens);
    if (kind == "finite_table")
        return GroupModel::finite_table(j.at("mul").get<std::vector<std::vector<int>>>(),
                                        j.at("identity").get<int>(), gens);
    throw SchemaError("unknown group kind: " + kind);
}

json group_to_json(const GroupModel& g) {
    json gens = json::array();
    for (const auto& s : g.generators()) gens.push_back(s.v);
    switch (g.kind()) {
        case GroupKind::Trivial:
            return {{"kind", "trivial"}};
        case GroupKind::Cyclic:
            return {{"kind", "cyclic"}, {"k", g.order()}, {"generators", gens}};
        case GroupKind::FreeAbelian:
            return {{"kind", "free_abelian"}, {"rank", g.rank()}, {"generators", gens}};
        case GroupKind::FiniteTable:
            throw UnsupportedError("saving finite table groups is not implemented");
    }
    throw SchemaError("unreachable");
}

// Shortest generator word for g, for serialization. BFS over S u S^-1.
std::vector<int> element_word(const GroupModel& group, const GroupElem& g) {
    if (g == group.identity()) return {};
    std::map<GroupElem, std::pair<GroupElem, int>> parent;  // child -> (parent, letter)
    std::deque<GroupElem> queue{group.identity()};
    parent[group.identity()] = {group.identity(), 0};
    long long guard = 0;
    while (!queue.empty()) {
        GroupElem cur = queue.front();
        queue.pop_front();
        if (++guard > 2000000) throw BudgetError("element word search exceeded budget");
        for (size_t s = 0; s < group.generators().size(); ++s) {
            for (int sign : {1, -1}) {
                GroupElem step = group.generators()[s];
                if (sign < 0) step = group.inverse(step);
                GroupElem nxt = group.multiply(cur, step);
                if (parent.count(nxt)) continue;
                parent[nxt] = {cur, sign * (static_cast<int>(s) + 1)};
                if (nxt == g) {
                    std::vector<int> word;
                    GroupElem walk = g;
                    while (walk != group.identity()) {
                        auto& [p, letter] = parent[walk];
                        word.push_back(letter);
                        walk = p;
                    }
                    std::reverse(word.begin(), word.end());
                    return word;
                }
                queue.push_back(nxt);
            }
        }
    }
    throw DomainError("element not reachable from generators");
}

}  // namespace

FreeComplex complex_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw SchemaError(std::string("invalid JSON: ") + e.what());
    }
    try {
        Ring ring = ring_from_json(j.at("ring"));
        Norm norm = norm_from_json(j.at("norm"));
        GroupModel group = group_from_json(j.at("group"));
        if (!j.contains("degrees") || !j.at("degrees").is_array())
            throw SchemaError("missing degrees array");

        // first pass: basis names per degree
        std::map<int, const json*> raw;
        for (const auto& dj : j.at("degrees")) {
            int i = dj.at("i").get<int>();
            if (i < 0 || raw.count(i)) throw SchemaError("bad or repeated degree index");
            raw[i] = &dj;
        }
        int max_i = raw.rbegin()->first;
        std::vector<FreeComplex::DegreeData> degrees(static_cast<size_t>(max_i) + 1);
        for (int i = 0; i <= max_i; ++i) {
            if (!raw.count(i)) throw SchemaError("missing degree " + std::to_string(i));
            degrees[static_cast<size_t>(i)].basis_names =
                raw[i]->at("basis").get<std::vector<std::string>>();
            degrees[static_cast<size_t>(i)].boundary.resize(
                degrees[static_cast<size_t>(i)].basis_names.size());
        }

        // second pass: boundaries with target names resolved
        for (int i = 0; i <= max_i; ++i) {
            const json& dj = *raw[i];
            if (!dj.contains("boundary")) continue;
            auto& d = degrees[static_cast<size_t>(i)];
            for (const auto& [name, terms] : dj.at("boundary").items()) {
                auto it = std::find(d.basis_names.begin(), d.basis_names.end(), name);
                if (it == d.basis_names.end())
                    throw SchemaError("boundary for unknown basis name: " + name);
                if (i == 0 && !terms.empty())
                    throw SchemaError("degree 0 cells cannot have boundaries");
                size_t bi = static_cast<size_t>(it - d.basis_names.begin());
                for (const auto& t : terms) {
                    if (!t.is_array() || t.size() != 3)
                        throw SchemaError("boundary term must be [word, target, coeff]");
                    BoundaryTerm term;
                    term.word = t.at(0).get<std::vector<int>>();
                    term.g = group.word(term.word);
                    std::string target_name = t.at(1).get<std::string>();
                    const auto& below = degrees[static_cast<size_t>(i - 1)].basis_names;
                    auto tit = std::find(below.begin(), below.end(), target_name);
                    if (tit == below.end())
                        throw SchemaError("dangling basis name '" + target_name +
                                          "' in boundary of " + name);
                    term.target = static_cast<int>(tit - below.begin());
                    term.coeff = rat_from_json(t.at(2));
                    if (!ring.contains(term.coeff))
                        throw SchemaError("coefficient outside ring in boundary of " + name);
                    d.boundary[bi].push_back(std::move(term));
                }
            }
        }
        return FreeComplex(std::move(ring), std::move(norm), std::move(group), std::move(degrees));
    } catch (const json::exception& e) {
        throw SchemaError(std::string("schema violation: ") + e.what());
    }
}

std::string complex_to_json_text(const FreeComplex& complex) {
    json j;
    j["ring"] = ring_to_json(complex.ring());
    j["norm"] = norm_to_json(complex.norm());
    j["group"] = group_to_json(complex.group());
    json degrees = json::array();
    for (int i = 0; i <= complex.max_degree(); ++i) {
        const auto& d = complex.degree_data(i);
        json dj;
        dj["i"] = i;
        dj["basis"] = d.basis_names;
        json boundary = json::object();
        for (size_t b = 0; b < d.boundary.size(); ++b) {
            if (d.boundary[b].empty()) continue;
            json terms = json::array();
            for (const auto& term : d.boundary[b]) {
                std::vector<int> word = term.word;
                if (complex.group().word(word) != term.g)
                    word = element_word(complex.group(), term.g);
                terms.push_back(json::array({word, complex.basis_name(i - 1, term.target),
                                             rat_to_json(term.coeff)}));
            }
            boundary[d.basis_names[b]] = terms;
        }
        dj["boundary"] = boundary;
        degrees.push_back(dj);
    }
    j["degrees"] = degrees;
    return j.dump(2) + "\n";
}

FreeComplex load_complex(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open complex file: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return complex_from_json_text(text);
}

void save_complex(const FreeComplex& complex, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write complex file: " + path);
    out << complex_to_json_text(complex);
}

}  // namespace fillvol
