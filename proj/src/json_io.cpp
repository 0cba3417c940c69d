#include "urysohn/json_io.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace urysohn {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) bad(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

std::size_t index_from_json(const Json& j, const Space& x) {
    if (j.is_number_unsigned()) {
        const auto i = j.get<std::size_t>();
        if (i >= x.size()) bad("point index out of range");
        return i;
    }
    if (j.is_string()) {
        if (auto i = x.find(j.get<std::string>())) return *i;
        bad("unknown point label " + j.get<std::string>());
    }
    bad("a point is a label or an index");
}

}  // namespace

Json to_json(const ExactReal& x) { return x.to_string(); }

ExactReal exact_from_json(const Json& j) {
    if (j.is_string()) return ExactReal::parse(j.get<std::string>());
    if (j.is_number_integer()) return ExactReal(j.get<long>());
    bad("numbers are strings in the exact grammar");
}

Json to_json(const DistanceSet& d) {
    Json out;
    out["values"] = Json::array();
    for (const auto& v : d.values()) out["values"].push_back(to_json(v));
    out["cap"] = d.bounded() ? to_json(*d.cap()) : Json("unbounded");
    out["closed"] = d.closed();
    return out;
}

DistanceSet distance_set_from_json(const Json& j) {
    const Json& values = field(j, "values");
    if (!values.is_array()) bad("\"values\" must be an array");
    std::vector<ExactReal> vs;
    for (const auto& v : values) vs.push_back(exact_from_json(v));
    std::optional<ExactReal> cap;
    if (j.contains("cap") && !(j.at("cap").is_string() && j.at("cap").get<std::string>() == "unbounded"))
        cap = exact_from_json(j.at("cap"));
    DistanceSet d(std::move(vs), std::move(cap));
    if (j.contains("closed") && j.at("closed").is_boolean() && j.at("closed").get<bool>() != d.closed())
        throw Error(ErrorCode::InvalidArgument, std::string("\"closed\" flag says ") +
                                                    (j.at("closed").get<bool>() ? "true" : "false") +
                                                    " but the values say otherwise");
    return d;
}

Json to_json(const Space& x) {
    Json out;
    out["labels"] = x.labels();
    Json dist = Json::array();
    for (std::size_t i = 0; i < x.size(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < x.size(); ++j) row.push_back(to_json(x.d(i, j)));
        dist.push_back(std::move(row));
    }
    out["dist"] = std::move(dist);
    if (x.ordered())
        out["order"] = std::vector<std::size_t>(x.order().begin(), x.order().end());
    else
        out["order"] = nullptr;
    if (x.delta()) out["delta"] = to_json(*x.delta());
    return out;
}

Space space_from_json(const Json& j) {
    const Json& labels = field(j, "labels");
    const Json& dist = field(j, "dist");
    if (!labels.is_array() || !dist.is_array()) bad("\"labels\" and \"dist\" must be arrays");
    std::vector<std::string> ls;
    for (const auto& l : labels) {
        if (!l.is_string()) bad("labels must be strings");
        ls.push_back(l.get<std::string>());
    }
    std::vector<std::vector<ExactReal>> ds;
    for (const auto& row : dist) {
        if (!row.is_array()) bad("\"dist\" must be a matrix");
        std::vector<ExactReal> r;
        for (const auto& v : row) r.push_back(exact_from_json(v));
        ds.push_back(std::move(r));
    }
    std::optional<std::vector<std::size_t>> order;
    if (j.contains("order") && !j.at("order").is_null()) {
        order.emplace();
        for (const auto& o : j.at("order")) {
            if (!o.is_number_unsigned()) bad("\"order\" lists point indices");
            order->push_back(o.get<std::size_t>());
        }
    }
    std::optional<DistanceSet> delta;
    if (j.contains("delta") && !j.at("delta").is_null()) delta = distance_set_from_json(j.at("delta"));
    return Space(std::move(ls), std::move(ds), std::move(order), std::move(delta));
}

Json to_json(const DvsCode& c) {
    Json out;
    out["prefix"] = Json::array();
    for (const auto& v : c.prefix) out["prefix"].push_back(to_json(v));
    out["bounded"] = c.bounded;
    return out;
}

DvsCode code_from_json(const Json& j) {
    DvsCode c;
    const Json& prefix = field(j, "prefix");
    if (!prefix.is_array()) bad("\"prefix\" must be an array");
    for (const auto& v : prefix) c.prefix.push_back(exact_from_json(v));
    if (j.contains("bounded")) {
        if (!j.at("bounded").is_boolean()) bad("\"bounded\" must be a boolean");
        c.bounded = j.at("bounded").get<bool>();
    }
    return c;
}

Json to_json(const PartialIsometry& p, const Space& x) {
    Json pairs = Json::array();
    for (const auto& [a, b] : p.pairs) pairs.push_back(Json::array({x.label(a), x.label(b)}));
    return Json{{"pairs", std::move(pairs)}};
}

PartialIsometry isometry_from_json(const Json& j, const Space& x) {
    const Json& pairs = j.is_array() ? j : field(j, "pairs");
    PartialIsometry p;
    for (const auto& pr : pairs) {
        if (!pr.is_array() || pr.size() != 2) bad("a pair is [source, target]");
        p.pairs.emplace_back(index_from_json(pr[0], x), index_from_json(pr[1], x));
    }
    return p;
}

Json to_json(const RatMatrix& m) {
    Json entries = Json::array();
    for (const auto& e : m.entries()) entries.push_back(ExactReal(e).to_string());
    return Json{{"matrix", std::move(entries)}};
}

Json to_json(const ExtensionReport& r, const Space& x) {
    Json out;
    out["holds"] = r.holds();
    out["checked"] = r.checked;
    out["budget_exceeded"] = r.budget_exceeded;
    Json list = Json::array();
    for (const auto& u : r.unrealized) {
        Json e;
        e["subset"] = Json::array();
        for (std::size_t i : u.subset) e["subset"].push_back(x.label(i));
        e["distances"] = Json::array();
        for (const auto& d : u.extension.distances) e["distances"].push_back(to_json(d));
        e["slot"] = u.extension.slot;
        list.push_back(std::move(e));
    }
    out["unrealized"] = std::move(list);
    return out;
}

Json to_json(const ArrowVerdict& v, const Space& c) {
    Json out;
    out["status"] = to_string(v.status);
    out["stats"] = Json{{"a_copies", v.stats.a_copies},
                        {"b_copies", v.stats.b_copies},
                        {"nodes", v.stats.nodes},
                        {"mode", v.stats.exhaustive ? "exhaustive" : "backtracking"}};
    if (v.bad_coloring) {
        Json coloring = Json::array();
        for (std::size_t i = 0; i < v.a_copies.size(); ++i) {
            Json copy = Json::array();
            for (std::size_t p : v.a_copies[i]) copy.push_back(c.label(p));
            coloring.push_back(Json{{"copy", std::move(copy)}, {"color", (*v.bad_coloring)[i]}});
        }
        out["bad_coloring"] = std::move(coloring);
    }
    return out;
}

Json to_json(const std::vector<ClauseResult>& clauses) {
    Json out = Json::array();
    for (const auto& c : clauses) {
        Json e;
        e["clause"] = c.clause;
        e["status"] = to_string(c.status);
        e["checked"] = c.checked;
        e["unwitnessed"] = c.unwitnessed;
        if (!c.witness.empty()) {
            Json w = Json::object();
            for (const auto& [k, val] : c.witness) w[k] = val;
            e["witness"] = std::move(w);
        }
        out.push_back(std::move(e));
    }
    return out;
}

Json to_json(const EncodedModel& m) {
    Json out;
    const std::size_t n = m.size();
    out["universe"] = Json::array();
    for (const auto& x : m.universe) out["universe"].push_back(to_json(x));
    out["c"] = to_json(m.c);
    Json plus = Json::array();
    for (std::size_t i = 0; i < n; ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < n; ++j) {
            const auto k = m.plus[i * n + j];
            row.push_back(k ? Json(*k) : Json(nullptr));
        }
        plus.push_back(std::move(row));
    }
    out["plus"] = std::move(plus);
    Json tables = Json::array();
    for (std::size_t qi = 0; qi < m.sample.size(); ++qi) {
        Json rows = Json::array();
        for (std::size_t i = 0; i < n; ++i) {
            std::string row;
            for (std::size_t j = 0; j < n; ++j) row += m.r(qi, i, j) ? '1' : '0';
            rows.push_back(std::move(row));
        }
        tables.push_back(Json{{"q", m.sample[qi].get_str()}, {"rows", std::move(rows)}});
    }
    out["relations"] = std::move(tables);
    return out;
}

EncodedModel model_from_json(const Json& j) {
    EncodedModel m;
    for (const auto& x : field(j, "universe")) m.universe.push_back(exact_from_json(x));
    m.c = exact_from_json(field(j, "c"));
    const std::size_t n = m.size();
    const Json& plus = field(j, "plus");
    if (!plus.is_array() || plus.size() != n) bad("\"plus\" must be an n x n table");
    m.plus.resize(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!plus[i].is_array() || plus[i].size() != n) bad("\"plus\" must be an n x n table");
        for (std::size_t k = 0; k < n; ++k) {
            if (plus[i][k].is_null()) continue;
            if (!plus[i][k].is_number_unsigned() || plus[i][k].get<std::size_t>() >= n) bad("bad \"plus\" entry");
            m.plus[i * n + k] = plus[i][k].get<std::size_t>();
        }
    }
    for (const auto& t : field(j, "relations")) {
        const ExactReal q = exact_from_json(field(t, "q"));
        if (!q.is_rational() || q.sign() <= 0) bad("sampled q must be a positive rational");
        if (!m.sample.empty() && !(m.sample.back() < q.rational_part())) bad("sample must be strictly increasing");
        m.sample.push_back(q.rational_part());
        const Json& rows = field(t, "rows");
        if (!rows.is_array() || rows.size() != n) bad("relation table must have n rows");
        std::vector<char> table(n * n, 0);
        for (std::size_t i = 0; i < n; ++i) {
            const auto row = rows[i].get<std::string>();
            if (row.size() != n) bad("relation row must have n entries");
            for (std::size_t k = 0; k < n; ++k) {
                if (row[k] != '0' && row[k] != '1') bad("relation entries are 0 or 1");
                table[i * n + k] = row[k] == '1';
            }
        }
        m.relation.push_back(std::move(table));
    }
    return m;
}

Json load_json(const std::string& path) {
    std::stringstream buffer;
    if (path == "-") {
        buffer << std::cin.rdbuf();
    } else {
        std::ifstream in(path);
        if (!in) throw Error(ErrorCode::ParseError, "cannot read " + path);
        buffer << in.rdbuf();
    }
    try {
        return Json::parse(buffer.str());
    } catch (const Json::parse_error& e) {
        throw Error(ErrorCode::ParseError, path + ": " + e.what());
    }
}

std::string dump(const Json& j) { return j.dump(); }

}  // namespace urysohn
