#include "galcoh/config.hpp"

#include <fstream>
#include <sstream>

#include "galcoh/errors.hpp"

namespace galcoh {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& source, const std::string& where, const std::string& what) {
    throw InputError(source + ": " + where + ": " + what);
}

const json& field(const json& obj, const char* key, const std::string& source, const std::string& where) {
    if (!obj.is_object()) fail(source, where, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) fail(source, where, std::string("missing field '") + key + "'");
    return *it;
}

std::int64_t as_int(const json& j, const std::string& source, const std::string& where) {
    if (!j.is_number_integer()) fail(source, where, "expected an integer");
    return j.get<std::int64_t>();
}

std::vector<std::int64_t> as_int_list(const json& j, const std::string& source, const std::string& where) {
    if (!j.is_array()) fail(source, where, "expected an array of integers");
    std::vector<std::int64_t> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_int(j[i], source, where + "[" + std::to_string(i) + "]"));
    return out;
}

std::string as_string(const json& j, const std::string& source, const std::string& where) {
    if (!j.is_string()) fail(source, where, "expected a string");
    return j.get<std::string>();
}

std::vector<Elem> as_elems(const json& j, std::size_t bound, const std::string& source, const std::string& where) {
    std::vector<Elem> out;
    for (std::int64_t x : as_int_list(j, source, where)) {
        if (x < 0 || static_cast<std::size_t>(x) >= bound) fail(source, where, "element id out of range");
        out.push_back(static_cast<Elem>(x));
    }
    return out;
}

GroupPtr lookup(const GroupLibrary& lib, const std::string& name, const std::string& source, const std::string& where) {
    auto it = lib.find(name);
    if (it == lib.end()) fail(source, where, "unknown group '" + name + "'");
    return it->second;
}

GroupPtr build_semidirect(const json& def, const GroupLibrary& lib, const std::string& source, const std::string& where) {
    const GroupPtr n = lookup(lib, as_string(field(def, "normal", source, where), source, where + ".normal"), source, where + ".normal");
    const GroupPtr q = lookup(lib, as_string(field(def, "quotient", source, where), source, where + ".quotient"), source, where + ".quotient");
    const json& act = field(def, "action", source, where);
    if (!act.is_array() || act.size() != q->generators().size()) {
        fail(source, where + ".action", "expected one entry per quotient generator");
    }
    std::vector<GroupHom> gen_auts;
    for (std::size_t i = 0; i < act.size(); ++i) {
        const std::string w = where + ".action[" + std::to_string(i) + "]";
        try {
            gen_auts.push_back(make_hom(n, n, as_elems(act[i], n->order(), source, w)));
        } catch (const InputError& e) {
            fail(source, w, e.what());
        }
    }
    // action of every quotient element, by breadth-first words in the generators
    std::vector<std::vector<Elem>> table(q->order());
    std::vector<Elem> ident(n->order());
    for (Elem x = 0; x < n->order(); ++x) ident[x] = x;
    table[q->identity()] = ident;
    std::vector<Elem> todo{q->identity()};
    for (std::size_t k = 0; k < todo.size(); ++k) {
        const Elem x = todo[k];
        for (std::size_t i = 0; i < q->generators().size(); ++i) {
            const Elem y = q->mul(x, q->generators()[i]);
            if (!table[y].empty()) continue;
            std::vector<Elem> t(n->order());
            for (Elem a = 0; a < n->order(); ++a) t[a] = table[x][gen_auts[i](a)];
            table[y] = std::move(t);
            todo.push_back(y);
        }
    }
    try {
        return make_semidirect(n, q, table).group;
    } catch (const InputError& e) {
        fail(source, where, e.what());
    }
}

GroupPtr build_group(const json& def, const GroupLibrary& lib, const std::string& source, const std::string& where) {
    const std::string kind = as_string(field(def, "kind", source, where), source, where + ".kind");
    try {
        if (kind == "cyclic") {
            const std::int64_t n = as_int(field(def, "order", source, where), source, where + ".order");
            if (n < 1) fail(source, where + ".order", "order must be positive");
            if (static_cast<std::size_t>(n) > kMaxGroupOrder) throw ResourceError(source + ": " + where + ": group order too large");
            return make_cyclic(static_cast<std::size_t>(n));
        }
        if (kind == "abelian") {
            const auto f = as_int_list(field(def, "factors", source, where), source, where + ".factors");
            std::size_t card = 1;
            for (auto x : f) {
                if (x < 1) fail(source, where + ".factors", "factors must be positive");
                card *= static_cast<std::size_t>(x);
                if (card > kMaxGroupOrder) throw ResourceError(source + ": " + where + ": group order too large");
            }
            return make_abelian(f);
        }
        if (kind == "product") {
            const GroupPtr l = lookup(lib, as_string(field(def, "left", source, where), source, where + ".left"), source, where + ".left");
            const GroupPtr r = lookup(lib, as_string(field(def, "right", source, where), source, where + ".right"), source, where + ".right");
            if (l->order() * r->order() > kMaxGroupOrder) throw ResourceError(source + ": " + where + ": group order too large");
            return make_direct_product(l, r).group;
        }
        if (kind == "semidirect") return build_semidirect(def, lib, source, where);
        if (kind == "d8") return make_d8();
        if (kind == "cayley") {
            const std::int64_t n = as_int(field(def, "order", source, where), source, where + ".order");
            if (n < 1) fail(source, where + ".order", "order must be positive");
            if (static_cast<std::size_t>(n) > kMaxGroupOrder) throw ResourceError(source + ": " + where + ": group order too large");
            const json& rows = field(def, "table", source, where);
            if (!rows.is_array() || rows.size() != static_cast<std::size_t>(n)) fail(source, where + ".table", "expected order rows");
            std::vector<Elem> table;
            for (std::size_t i = 0; i < rows.size(); ++i) {
                const auto row = as_elems(rows[i], static_cast<std::size_t>(n), source, where + ".table[" + std::to_string(i) + "]");
                if (row.size() != static_cast<std::size_t>(n)) fail(source, where + ".table[" + std::to_string(i) + "]", "row has the wrong length");
                table.insert(table.end(), row.begin(), row.end());
            }
            const auto gens = as_elems(field(def, "generators", source, where), static_cast<std::size_t>(n), source, where + ".generators");
            return std::make_shared<const FiniteGroup>(static_cast<std::size_t>(n), table, gens);
        }
    } catch (const InputError& e) {
        const std::string msg = e.what();
        if (msg.rfind(source + ":", 0) == 0) throw;
        fail(source, where, msg);
    }
    fail(source, where + ".kind", "unknown group kind '" + kind + "'");
}

} // namespace

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError(path + ": cannot open file");
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return json::parse(ss.str());
    } catch (const json::parse_error& e) {
        throw InputError(path + ": parse error at byte " + std::to_string(e.byte) + ": " + e.what());
    }
}

GroupLibrary parse_group_config(const json& doc, const std::string& source) {
    const json& defs = field(doc, "groups", source, "$");
    if (!defs.is_object()) fail(source, "groups", "expected an object of named groups");
    GroupLibrary lib;
    // nlohmann::json objects iterate in key order; resolve references by repeated passes
    std::vector<std::string> pending;
    for (auto it = defs.begin(); it != defs.end(); ++it) pending.push_back(it.key());
    while (!pending.empty()) {
        std::vector<std::string> next;
        std::string last_error;
        for (const auto& name : pending) {
            const json& def = defs.at(name);
            bool ready = true;
            for (const char* ref : {"left", "right", "normal", "quotient"}) {
                if (def.is_object() && def.contains(ref) && def[ref].is_string() && !lib.count(def[ref].get<std::string>()) &&
                    defs.contains(def[ref].get<std::string>())) {
                    ready = false;
                }
            }
            if (!ready) {
                next.push_back(name);
                continue;
            }
            lib[name] = build_group(def, lib, source, "groups." + name);
        }
        if (next.size() == pending.size()) fail(source, "groups", "circular group references");
        pending = std::move(next);
    }
    return lib;
}

GroupLibrary load_group_config(const std::string& path) { return parse_group_config(read_json_file(path), path); }

ModulePtr parse_module_config(const json& doc, const GroupLibrary& groups, const std::string& source) {
    GroupPtr g;
    if (doc.is_object() && doc.contains("group")) {
        g = lookup(groups, as_string(doc["group"], source, "group"), source, "group");
    } else if (groups.size() == 1) {
        g = groups.begin()->second;
    } else {
        fail(source, "$", "missing field 'group'");
    }
    const auto factors = as_int_list(field(doc, "factors", source, "$"), source, "factors");
    const json& act = field(doc, "action", source, "$");
    try {
        if (act.is_string()) {
            if (act.get<std::string>() != "trivial") fail(source, "action", "expected \"trivial\" or a list of matrices");
            return make_trivial_module(g, factors);
        }
        if (!act.is_array() || act.size() != g->generators().size()) {
            fail(source, "action", "expected one matrix per group generator (" + std::to_string(g->generators().size()) + ")");
        }
        std::vector<IntMatrix> mats;
        for (std::size_t k = 0; k < act.size(); ++k) {
            const std::string w = "action[" + std::to_string(k) + "]";
            const json& rows = act[k];
            if (!rows.is_array() || rows.size() != factors.size()) fail(source, w, "matrix must have one row per factor");
            IntMatrix m(factors.size(), factors.size());
            for (std::size_t i = 0; i < rows.size(); ++i) {
                const auto row = as_int_list(rows[i], source, w + "[" + std::to_string(i) + "]");
                if (row.size() != factors.size()) fail(source, w + "[" + std::to_string(i) + "]", "row has the wrong length");
                for (std::size_t j = 0; j < row.size(); ++j) m(i, j) = row[j];
            }
            mats.push_back(std::move(m));
        }
        return make_module(g, factors, mats);
    } catch (const InputError& e) {
        const std::string msg = e.what();
        if (msg.rfind(source + ":", 0) == 0) throw;
        fail(source, "module", msg);
    }
}

ModulePtr load_module_config(const std::string& path, const GroupLibrary& groups) {
    return parse_module_config(read_json_file(path), groups, path);
}

ConditionInput parse_condition_input(const json& doc, const std::string& source) {
    ConditionInput in;
    const json& places = field(doc, "places", source, "$");
    if (!places.is_array()) fail(source, "places", "expected an array");
    for (std::size_t v = 0; v < places.size(); ++v) {
        const std::string w = "places[" + std::to_string(v) + "]";
        const json& p = places[v];
        const std::string name = p.is_object() && p.contains("name") ? as_string(p["name"], source, w + ".name") : "v" + std::to_string(v);
        try {
            if (p.is_object() && p.contains("sign_sequences")) {
                const json& s = p["sign_sequences"];
                const auto n = as_int(field(s, "n", source, w + ".sign_sequences"), source, w + ".sign_sequences.n");
                const auto m = as_int(field(s, "m", source, w + ".sign_sequences"), source, w + ".sign_sequences.m");
                if (n < 2 || m < 2) fail(source, w + ".sign_sequences", "need n >= 2 and m >= 2");
                const json& d = field(s, "delta", source, w + ".sign_sequences");
                if (!d.is_array()) fail(source, w + ".sign_sequences.delta", "expected an array");
                std::vector<SignSequence> seqs;
                for (std::size_t i = 0; i < d.size(); ++i) {
                    const auto e = as_int_list(d[i], source, w + ".sign_sequences.delta[" + std::to_string(i) + "]");
                    seqs.emplace_back(std::vector<int>(e.begin(), e.end()));
                }
                in.places.push_back(place_from_sign_sequences(name, static_cast<std::size_t>(n), m, seqs));
            } else {
                const auto f = as_int_list(field(p, "group", source, w), source, w + ".group");
                for (auto x : f) {
                    if (x < 2) fail(source, w + ".group", "invariant factors must be at least 2");
                }
                PlaceData pd{name, FiniteAbelianGroup(f), {}};
                const json& d = field(p, "delta_image", source, w);
                if (!d.is_array()) fail(source, w + ".delta_image", "expected an array");
                for (std::size_t i = 0; i < d.size(); ++i) pd.delta_image.push_back(as_int_list(d[i], source, w + ".delta_image[" + std::to_string(i) + "]"));
                in.places.push_back(std::move(pd));
            }
        } catch (const InputError& e) {
            const std::string msg = e.what();
            if (msg.rfind(source + ":", 0) == 0) throw;
            fail(source, w, msg);
        }
    }
    if (doc.contains("sha_image")) {
        const json& r = doc["sha_image"];
        if (!r.is_array()) fail(source, "sha_image", "expected an array");
        for (std::size_t i = 0; i < r.size(); ++i) in.sha_image.push_back(as_int_list(r[i], source, "sha_image[" + std::to_string(i) + "]"));
    }
    try {
        validate_condition_input(in);
    } catch (const InputError& e) {
        fail(source, "$", e.what());
    }
    return in;
}

ConditionInput load_condition_input(const std::string& path) { return parse_condition_input(read_json_file(path), path); }

json condition_input_to_json(const ConditionInput& in) {
    json places = json::array();
    for (const auto& pd : in.places) {
        places.push_back({{"name", pd.name}, {"group", pd.group.factors()}, {"delta_image", pd.delta_image}});
    }
    return {{"places", places}, {"sha_image", in.sha_image}};
}

} // namespace galcoh
