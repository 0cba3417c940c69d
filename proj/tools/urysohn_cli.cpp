// Command-line front end. JSON results go to stdout, diagnostics to stderr.
// Exit codes: 0 affirmative, 1 negative, 2 unknown or budget, 3 input error.

#include <CLI11.hpp>

#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "urysohn/json_io.hpp"

using namespace urysohn;

namespace {

constexpr int kYes = 0;
constexpr int kNo = 1;
constexpr int kUnknown = 2;
constexpr int kInputError = 3;

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : text) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else if (ch != ' ') {
            cur += ch;
        }
    }
    if (!cur.empty() || !out.empty()) out.push_back(cur);
    return out;
}

std::vector<ExactReal> parse_numbers(const std::string& text) {
    std::vector<ExactReal> out;
    for (const auto& part : split(text, ',')) out.push_back(ExactReal::parse(part));
    return out;
}

std::vector<Rational> parse_rationals(const std::string& text) {
    std::vector<Rational> out;
    for (const auto& x : parse_numbers(text)) {
        if (!x.is_rational()) throw Error(ErrorCode::InvalidArgument, "sample entries must be rational");
        out.push_back(x.rational_part());
    }
    return out;
}

std::size_t point(const Space& x, const std::string& name) {
    if (auto i = x.find(name)) return *i;
    throw Error(ErrorCode::InvalidArgument, "unknown point " + name);
}

// "a:b,c:d" over labels of one or two spaces.
std::vector<std::pair<std::size_t, std::size_t>> parse_pairs(const std::string& text, const Space& left,
                                                             const Space& right) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    if (text.empty()) return out;
    for (const auto& part : split(text, ',')) {
        const auto ends = split(part, ':');
        if (ends.size() != 2) throw Error(ErrorCode::InvalidArgument, "pairs are written a:b");
        out.emplace_back(point(left, ends[0]), point(right, ends[1]));
    }
    return out;
}

void emit(const Json& j) { std::cout << dump(j) << '\n'; }

Json labels_of(const Space& x, const std::vector<std::size_t>& idx) {
    Json out = Json::array();
    for (std::size_t i : idx) out.push_back(x.label(i));
    return out;
}

Json code_map(const std::vector<std::size_t>& g) { return Json(g); }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact finite combinatorics of distance value sets and metric spaces"};
    app.require_subcommand(1);
    std::function<int()> action;

    // Shared option storage.
    std::string delta_file, space_file, code_c, code_d, pairs_text, triple_text, alpha_text, beta_text, eps_text;
    std::string b_file, c_file, a_file, d1_file, d2_file, map_file, overlap_text, cap_text, bound_text;
    std::string sample_text, horizon_text, model_file, other_file, point_name, back_name;
    int height = 1;
    std::size_t k = 1;
    unsigned colors = 2;
    unsigned jobs = 1;
    std::size_t max_points = 64;
    std::size_t max_pairs = 1'000'000;
    std::uint64_t budget = 10'000'000;
    std::size_t max_size = 100000;

    auto needs_delta = [&](CLI::App* sub) {
        sub->add_option("--delta", delta_file, "distance set JSON (file or -)")->required();
    };

    {
        auto* sub = app.add_subcommand("gen-dvs", "generate {p*alpha + q} up to a height and bound");
        sub->add_option("--alpha", alpha_text, "positive irrational surd")->required();
        sub->add_option("--height", height, "bound on numerators and denominators")->required();
        sub->add_option("--bound", bound_text, "largest value kept (also the cap)")->required();
        sub->callback([&] {
            action = [&] {
                emit(to_json(gen_delta_alpha(ExactReal::parse(alpha_text), height, ExactReal::parse(bound_text))));
                return kYes;
            };
        });
    }
    {
        auto* sub = app.add_subcommand("close", "close a distance set under truncated sums");
        needs_delta(sub);
        sub->add_option("--bound", bound_text, "horizon for unbounded sets (default: largest value)");
        sub->add_option("--max-size", max_size, "size limit");
        sub->callback([&] {
            action = [&] {
                const auto d = distance_set_from_json(load_json(delta_file));
                ExactReal bound = d.bounded() ? *d.cap() : d.empty() ? ExactReal(0) : d.max();
                if (!bound_text.empty()) bound = ExactReal::parse(bound_text);
                emit(to_json(close(d, bound, max_size)));
                return kYes;
            };
        });
    }
    {
        auto* sub = app.add_subcommand("check-triangle", "is (x, y, z) a triangle over the set");
        needs_delta(sub);
        sub->add_option("--triple", triple_text, "x,y,z")->required();
        sub->callback([&] {
            action = [&] {
                const auto d = distance_set_from_json(load_json(delta_file));
                const auto t = parse_numbers(triple_text);
                if (t.size() != 3) throw Error(ErrorCode::InvalidArgument, "--triple takes three numbers");
                const bool ok = delta_triangle(t[0], t[1], t[2], d);
                emit(Json{{"triangle", ok}});
                return ok ? kYes : kNo;
            };
        });
    }
    {
        auto* sub = app.add_subcommand("check-equiv", "scaling witness, or a given bijection's triangle check");
        sub->add_option("--d1", d1_file, "first distance set")->required();
        sub->add_option("--d2", d2_file, "second distance set")->required();
        sub->add_option("--map", map_file, "JSON list of [x, f(x)] pairs to check instead of scaling");
        sub->callback([&] {
            action = [&] {
                const auto d1 = distance_set_from_json(load_json(d1_file));
                const auto d2 = distance_set_from_json(load_json(d2_file));
                if (!map_file.empty()) {
                    ValueMap f;
                    for (const auto& pr : load_json(map_file)) {
                        if (!pr.is_array() || pr.size() != 2) throw Error(ErrorCode::ParseError, "map entries are pairs");
                        f.emplace_back(exact_from_json(pr[0]), exact_from_json(pr[1]));
                    }
                    const auto r = triangle_bijection_check(d1, d2, f);
                    Json out{{"fragment_consistent", r.fragment_consistent}, {"linear", linearity_check(f, d1)}};
                    if (r.witness) out["witness"] = Json::array({(*r.witness)[0].to_string(), (*r.witness)[1].to_string(),
                                                                 (*r.witness)[2].to_string()});
                    emit(out);
                    return r.fragment_consistent ? kYes : kNo;
                }
                const auto w = scaling_witness(d1, d2);
                Json out{{"scaling", w.has_value()}};
                if (w) {
                    out["witness"] = Json{{"r", w->ratio.to_string()}};
                    out["linear"] = linearity_check(w->induced_map(), d1);
                }
                emit(out);
                return w ? kYes : kNo;
            };
        });
    }
    {
        auto* sub = app.add_subcommand("gl2", "GL2(Q) orbit relation of two quadratic irrationals");
        sub->add_option("--alpha", alpha_text)->required();
        sub->add_option("--beta", beta_text)->required();
        sub->add_option("--search-height", height, "reserved");
        sub->callback([&] {
            action = [&] {
                const auto v = gl2_equivalent(ExactReal::parse(alpha_text), ExactReal::parse(beta_text), height);
                Json out{{"status", to_string(v.status)}};
                if (v.matrix) out["matrix"] = to_json(*v.matrix)["matrix"];
                emit(out);
                return v.status == Gl2Status::Equivalent ? kYes : v.status == Gl2Status::Inequivalent ? kNo : kUnknown;
            };
        });
    }
    {
        auto* sub = app.add_subcommand("amalgamate", "free amalgam of B and C over an overlap");
        sub->add_option("--b", b_file)->required();
        sub->add_option("--c", c_file)->required();
        sub->add_option("--overlap", overlap_text, "b_label:c_label,...");
        sub->add_option("--cap", cap_text, "cap distances afterwards");
        sub->callback([&] {
            action = [&] {
                const auto b = space_from_json(load_json(b_file));
                const auto c = space_from_json(load_json(c_file));
                const auto overlap = parse_pairs(overlap_text, b, c);
                auto am = free_amalgam(b, c, overlap);
                if (!cap_text.empty()) am.space = cap_distances(am.space, ExactReal::parse(cap_text));
                emit(Json{{"space", to_json(am.space)}, {"c_embedding", labels_of(am.space, am.c_embedding)}});
                return kYes;
            };
        });
    }
    {
        auto* sub = app.add_subcommand("saturate", "realise every one-point extension of <= k point subsets");
        sub->add_option("--space", space_file)->required();
        needs_delta(sub);
        sub->add_option("-k", k, "subset size")->required();
        sub->add_option("--max-points", max_points);
        sub->add_option("--max-pairs", max_pairs);
        sub->callback([&] {
            action = [&] {
                const auto m = space_from_json(load_json(space_file));
                const auto d = distance_set_from_json(load_json(delta_file));
                const auto r = saturate(m, d, k, Budget{max_points, max_pairs});
                emit(Json{{"space", to_json(r.space)}, {"report", to_json(r.report, r.space)}});
                return r.report.holds() ? kYes : kUnknown;
            };
        });
    }
    {
        auto* sub = app.add_subcommand("check-extension", "look up every one-point extension of <= k point subsets");
        sub->add_option("--space", space_file)->required();
        needs_delta(sub);
        sub->add_option("-k", k, "subset size")->required();
        sub->add_option("--max-pairs", max_pairs);
        sub->callback([&] {
            action = [&] {
                const auto m = space_from_json(load_json(space_file));
                const auto d = distance_set_from_json(load_json(delta_file));
                const auto r = extension_property_check(m, d, k, {}, Budget{max_points, max_pairs});
                emit(to_json(r, m));
                return r.holds() ? kYes : kNo;
            };
        });
    }
    {
        auto* sub = app.add_subcommand("perturb", "move the targets of a partial isometry by delta < eps");
        sub->add_option("--space", space_file)->required();
        needs_delta(sub);
        sub->add_option("--pairs", pairs_text, "x:y,...")->required();
        sub->add_option("--eps", eps_text)->required();
        sub->callback([&] {
            action = [&] {
                const auto m = space_from_json(load_json(space_file));
                const auto d = distance_set_from_json(load_json(delta_file));
                const PartialIsometry p{parse_pairs(pairs_text, m, m)};
                const auto r = density_perturb(m, p, ExactReal::parse(eps_text), d);
                PartialIsometry moved;
                for (std::size_t i = 0; i < p.pairs.size(); ++i) moved.pairs.emplace_back(p.pairs[i].first, r.images[i]);
                emit(Json{{"delta", r.delta.to_string()},
                          {"images", labels_of(r.space, r.images)},
                          {"map", to_json(moved, r.space)["pairs"]},
                          {"space", to_json(r.space)},
                          {"z", to_json(r.witness)}});
                return kYes;
            };
        });
    }
    {
        auto* sub = app.add_subcommand("extend-isometry", "one back-and-forth step for a partial isometry");
        sub->add_option("--space", space_file)->required();
        needs_delta(sub);
        sub->add_option("--pairs", pairs_text, "x:y,...");
        auto* fwd = sub->add_option("--point", point_name, "add to the domain");
        auto* back = sub->add_option("--back", back_name, "add to the range");
        fwd->excludes(back);
        sub->callback([&] {
            action = [&] {
                if (point_name.empty() == back_name.empty())
                    throw Error(ErrorCode::InvalidArgument, "give exactly one of --point and --back");
                const auto m = space_from_json(load_json(space_file));
                const auto d = distance_set_from_json(load_json(delta_file));
                const PartialIsometry p{parse_pairs(pairs_text, m, m)};
                const auto r = point_name.empty() ? extend_partial_isometry_back(m, p, point(m, back_name), d)
                                                  : extend_partial_isometry(m, p, point(m, point_name), d);
                emit(Json{{"added_point", r.added_point}, {"map", to_json(r.map, r.space)["pairs"]}, {"space", to_json(r.space)}});
                return kYes;
            };
        });
    }
    {
        auto* sub = app.add_subcommand("check-arrow", "C -> (B)^A_k by exhaustive or backtracking search");
        sub->add_option("--c", c_file)->required();
        sub->add_option("--b", b_file)->required();
        sub->add_option("--a", a_file)->required();
        sub->add_option("-k", colors, "number of colors")->required();
        sub->add_option("--budget", budget, "coloring nodes");
        sub->add_option("--jobs", jobs, "worker threads");
        sub->callback([&] {
            action = [&] {
                const auto c = space_from_json(load_json(c_file));
                const auto b = space_from_json(load_json(b_file));
                const auto a = space_from_json(load_json(a_file));
                const auto v = arrow(c, b, a, colors, budget, jobs);
                emit(to_json(v, c));
                return v.status == ArrowStatus::Holds ? kYes : v.status == ArrowStatus::Fails ? kNo : kUnknown;
            };
        });
    }
    {
        auto* sub = app.add_subcommand("check-rigid", "is the identity the only automorphism");
        sub->add_option("--space", space_file)->required();
        sub->callback([&] {
            action = [&] {
                const bool rigid = is_rigid(space_from_json(load_json(space_file)));
                emit(Json{{"rigid", rigid}});
                return rigid ? kYes : kNo;
            };
        });
    }
    {
        auto* sub = app.add_subcommand("encode-code", "sequence code (0, v1, 0, v2, ...) of a distance set");
        needs_delta(sub);
        sub->callback([&] {
            action = [&] {
                emit(to_json(encode_dvs(distance_set_from_json(load_json(delta_file)))));
                return kYes;
            };
        });
    }
    {
        auto* sub = app.add_subcommand("check-code", "clauses (a)-(d) on a code prefix");
        sub->add_option("--code", code_c)->required();
        sub->callback([&] {
            action = [&] {
                const auto r = validate_code(code_from_json(load_json(code_c)));
                emit(Json{{"semantics", "prefix"}, {"clauses", to_json(r)}});
                for (const auto& c : r) {
                    if (c.status == ClauseStatus::Violated) return kNo;
                }
                return kYes;
            };
        });
    }
    {
        auto* sub = app.add_subcommand("check-sim", "permutation and ratio with d[g(i)] = r c[i]");
        sub->add_option("--c", code_c)->required();
        sub->add_option("--d", code_d)->required();
        sub->callback([&] {
            action = [&] {
                const auto w = sim_check(code_from_json(load_json(code_c)), code_from_json(load_json(code_d)));
                Json out{{"semantics", "prefix"}, {"similar", w.has_value()}};
                if (w) {
                    out["g"] = code_map(w->g);
                    out["r"] = w->r.to_string();
                }
                emit(out);
                return w ? kYes : kNo;
            };
        });
    }
    {
        auto* sub = app.add_subcommand("check-approx", "permutation preserving zeros and triangle triples");
        sub->add_option("--c", code_c)->required();
        sub->add_option("--d", code_d)->required();
        sub->add_option("--budget", budget, "search nodes");
        sub->add_option("--jobs", jobs, "worker threads");
        sub->callback([&] {
            action = [&] {
                std::uint64_t nodes = 0;
                const auto g = approx_check(code_from_json(load_json(code_c)), code_from_json(load_json(code_d)),
                                            budget, jobs, &nodes);
                Json out{{"semantics", "prefix"}, {"approx", g.has_value()}, {"nodes", nodes}};
                if (g) out["g"] = code_map(*g);
                emit(out);
                return g ? kYes : kNo;
            };
        });
    }
    {
        auto* sub = app.add_subcommand("triangle-structure", "triangle relation of a set, or isomorphism with --other");
        needs_delta(sub);
        sub->add_option("--other", other_file, "second distance set");
        sub->add_option("--budget", budget, "search nodes");
        sub->callback([&] {
            action = [&] {
                const auto s = triangle_structure(distance_set_from_json(load_json(delta_file)));
                if (other_file.empty()) {
                    Json triples = Json::array();
                    for (std::size_t i = 0; i < s.size(); ++i)
                        for (std::size_t j = 0; j < s.size(); ++j)
                            for (std::size_t l = 0; l < s.size(); ++l)
                                if (s.holds(i, j, l)) triples.push_back(Json::array({i, j, l}));
                    Json universe = Json::array();
                    for (const auto& x : s.universe) universe.push_back(x.to_string());
                    emit(Json{{"universe", universe}, {"triangles", triples}});
                    return kYes;
                }
                const auto t = triangle_structure(distance_set_from_json(load_json(other_file)));
                std::uint64_t nodes = 0;
                const auto map = ts_isomorphic(s, t, budget, &nodes);
                Json out{{"isomorphic", map.has_value()}, {"nodes", nodes}};
                if (map) out["map"] = code_map(*map);
                emit(out);
                return map ? kYes : kNo;
            };
        });
    }
    {
        auto* sub = app.add_subcommand("encode-model", "finite piece of the model with R_q tables");
        needs_delta(sub);
        sub->add_option("--sample", sample_text, "comma-separated positive rationals");
        sub->add_option("--horizon", horizon_text, "largest semigroup element kept");
        sub->callback([&] {
            action = [&] {
                const auto d = distance_set_from_json(load_json(delta_file));
                std::optional<std::vector<Rational>> sample;
                if (!sample_text.empty()) sample = parse_rationals(sample_text);
                std::optional<ExactReal> horizon;
                if (!horizon_text.empty()) horizon = ExactReal::parse(horizon_text);
                emit(to_json(model_encode(d, sample, horizon)));
                return kYes;
            };
        });
    }
    {
        auto* sub = app.add_subcommand("check-theory", "clauses (1)-(7) on an encoded model");
        auto* from_delta = sub->add_option("--delta", delta_file, "encode this set first");
        auto* from_model = sub->add_option("--model", model_file, "model JSON from encode-model");
        from_delta->excludes(from_model);
        sub->add_option("--sample", sample_text, "comma-separated positive rationals");
        sub->callback([&] {
            action = [&] {
                if (delta_file.empty() == model_file.empty())
                    throw Error(ErrorCode::InvalidArgument, "give exactly one of --delta and --model");
                EncodedModel m;
                if (!model_file.empty()) {
                    m = model_from_json(load_json(model_file));
                } else {
                    std::optional<std::vector<Rational>> sample;
                    if (!sample_text.empty()) sample = parse_rationals(sample_text);
                    m = model_encode(distance_set_from_json(load_json(delta_file)), sample);
                }
                const auto r = check_theory_T(m);
                emit(Json{{"clauses", to_json(r)}});
                for (const auto& c : r) {
                    if (c.status == ClauseStatus::Violated) return kNo;
                }
                return kYes;
            };
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kInputError;
    }
    try {
        return action();
    } catch (const Error& e) {
        std::cerr << e.what() << '\n';
        return e.code() == ErrorCode::BudgetExceeded ? kUnknown : kInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInputError;
    }
}
