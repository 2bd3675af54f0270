// polar-snf: construct polar graphs, compute Smith / critical groups by
// exact integer SNF, predict them in closed form, and verify the two agree.

#include <atomic>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "polar/polar.hpp"
#include "polar/predict.hpp"
#include "polar/snf.hpp"
#include "polar/srg.hpp"
#include "polar/verify.hpp"

using json = nlohmann::ordered_json;
using namespace polar;

namespace {

json int_json(const Int& v) {
    if (v.fits_slong_p()) return v.get_si();
    return v.get_str();
}

json profile_json(const Profile& p) {
    json j = json::object();
    for (const auto& [exp, mult] : p) j[std::to_string(exp)] = mult;
    return j;
}

json profiles_json(const std::map<Int, Profile>& ps) {
    json j = json::object();
    for (const auto& [ell, p] : ps) j[ell.get_str()] = profile_json(p);
    return j;
}

void emit(const json& j, const std::string& path) {
    if (path.empty()) {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream out(path);
    out << j.dump(2) << "\n";
    if (!out) {
        std::cerr << "error: cannot write " << path << "\n";
        std::exit(4);
    }
}

std::string target_name(Target t) { return t == Target::Smith ? "smith" : "critical"; }

json predict_object(const SrgInfo& info, Target tgt, const Injection& inj) {
    Prediction pred = predict(info, tgt, inj);
    std::map<Int, Profile> profiles;
    json branches = json::object();
    for (const auto& [ell, pp] : pred) {
        profiles[ell] = pp.profile;
        branches[ell.get_str()] = pp.branch;
    }
    json j;
    j["family"] = family_name(info.fam);
    j["q"] = info.q;
    j["m"] = info.m;
    j["target"] = target_name(tgt);
    j["v"] = int_json(info.v);
    j["k"] = int_json(info.k);
    j["profiles"] = profiles_json(profiles);
    j["group"] = group_string(profiles);
    j["branches"] = branches;
    return j;
}

json compute_object(Family fam, long q, long m, Target tgt, long vmax) {
    PolarGraph graph(fam, q, m, vmax);
    const SrgInfo& info = graph.info();
    IMat mat = (tgt == Target::Smith) ? graph.adjacency() : graph.laplacian();
    SmithResult s = smith(mat);
    Int prod = 1;
    for (const Int& d : s.divisors) prod *= d;
    std::map<Int, Profile> profiles;
    if (prod > 1)
        for (const auto& [ell, e] : factorize(prod)) profiles[ell] = ell_profile(s, ell);
    long free_rank = graph.v() - s.rank();
    json j;
    j["family"] = family_name(fam);
    j["q"] = q;
    j["m"] = m;
    j["target"] = target_name(tgt);
    j["v"] = graph.v();
    j["k"] = int_json(info.k);
    j["profiles"] = profiles_json(profiles);
    j["group"] = group_string(profiles, tgt == Target::Smith ? free_rank : 0);
    j["free_rank"] = free_rank;
    if (tgt == Target::Smith)
        j["det"] = int_json(bareiss_det(mat));
    else
        j["trees"] = int_json(spanning_trees(mat));
    return j;
}

json checks_json(const std::vector<PrimeCheck>& checks) {
    json j = json::object();
    for (const auto& pc : checks) {
        json c;
        c["predicted"] = profile_json(pc.predicted);
        c["computed"] = profile_json(pc.computed);
        c["branch"] = pc.branch;
        c["match"] = pc.match;
        j[pc.ell.get_str()] = c;
    }
    return j;
}

json verify_object(const VerifyReport& r) {
    json j;
    j["family"] = family_name(r.fam);
    j["q"] = r.q;
    j["m"] = r.m;
    j["v"] = int_json(r.info.v);
    j["k"] = int_json(r.info.k);
    j["srg_ok"] = r.srg_ok;
    j["det_ok"] = r.det_ok;
    j["tree_ok"] = r.tree_ok;
    j["smith"] = checks_json(r.smith_checks);
    j["critical"] = checks_json(r.critical_checks);
    j["match"] = r.verdict;
    if (!r.notes.empty()) j["notes"] = r.notes;
    j["ms"] = r.ms;
    return j;
}

template <class F>
void parallel_for(long n, int threads, F f) {
    if (threads <= 1 || n <= 1) {
        for (long i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<long> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < threads && t < n; ++t)
        pool.emplace_back([&] {
            for (;;) {
                long i = next.fetch_add(1);
                if (i >= n) break;
                f(i);
            }
        });
    for (auto& th : pool) th.join();
}

// Verify a list of instances (possibly in parallel); assembly order is the
// input order regardless of completion order.
json verify_many(const std::vector<BatteryInstance>& instances, const Injection& inj, long vmax,
                 int threads, bool& all_ok) {
    std::vector<json> results(instances.size());
    std::vector<char> ok(instances.size(), 0);
    parallel_for(static_cast<long>(instances.size()), threads, [&](long i) {
        const auto& b = instances[i];
        try {
            VerifyReport r = verify_instance(b.fam, b.q, b.m, inj, vmax);
            results[i] = verify_object(r);
            ok[i] = r.verdict ? 1 : 0;
        } catch (const std::exception& ex) {
            json j;
            j["family"] = family_name(b.fam);
            j["q"] = b.q;
            j["m"] = b.m;
            j["match"] = false;
            j["error"] = ex.what();
            results[i] = j;
            ok[i] = 0;
        }
    });
    all_ok = true;
    json arr = json::array();
    for (size_t i = 0; i < results.size(); ++i) {
        all_ok = all_ok && ok[i];
        arr.push_back(results[i]);
    }
    return arr;
}

void write_matrix(const IMat& m, std::ostream& out) {
    out << m.r << "\n";
    for (long i = 0; i < m.r; ++i) {
        for (long j = 0; j < m.c; ++j) {
            if (j) out << " ";
            out << m.at(i, j).get_str();
        }
        out << "\n";
    }
}

std::vector<Target> targets_of(const std::string& t) {
    if (t == "smith") return {Target::Smith};
    if (t == "critical") return {Target::Critical};
    if (t == "both") return {Target::Smith, Target::Critical};
    throw BadInstance("target must be smith, critical or both");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"polar graph Smith / critical group toolkit"};
    app.require_subcommand(1);

    std::string family, target = "both", jsonpath, what = "adjacency", outpath;
    long q = 0, m = 0, vmax = 4000, qmax = 3, mmax = 3;
    int threads = 1;
    bool run_battery = false;
    std::vector<std::string> inject_names;

    auto add_common = [&](CLI::App* sub, bool need_instance) {
        auto* fopt = sub->add_option("--family", family, "family: s|o|ominus|oplus|ue|uo");
        auto* qopt = sub->add_option("--q", q, "field size (prime power)");
        auto* mopt = sub->add_option("--m", m, "rank parameter");
        if (need_instance) {
            fopt->required();
            qopt->required();
            mopt->required();
        }
        sub->add_option("--target", target, "smith|critical|both");
        sub->add_option("--json", jsonpath, "write JSON report to this path");
        sub->add_option("--threads", threads, "worker threads");
        sub->add_option("--v-bound", vmax, "refuse instances with more vertices than this");
        sub->add_option("--inject-typo", inject_names, "re-enable a documented table typo (test hook)");
    };

    CLI::App* c_predict = app.add_subcommand("predict", "closed-form group predictions");
    add_common(c_predict, true);
    CLI::App* c_compute = app.add_subcommand("compute", "explicit SNF computation");
    add_common(c_compute, true);
    CLI::App* c_verify = app.add_subcommand("verify", "compare computation against prediction");
    add_common(c_verify, false);
    c_verify->add_flag("--battery", run_battery, "run the full acceptance battery");
    CLI::App* c_export = app.add_subcommand("export", "write matrices or point lists");
    add_common(c_export, true);
    c_export->add_option("--what", what, "adjacency|laplacian|points");
    c_export->add_option("--out", outpath, "output path");
    CLI::App* c_sweep = app.add_subcommand("sweep", "verify everything in a parameter range");
    add_common(c_sweep, false);
    c_sweep->add_option("--q-max", qmax, "largest field size");
    c_sweep->add_option("--m-max", mmax, "largest rank parameter");
    c_sweep->add_option("--v-max", vmax, "skip instances with more vertices");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        Injection inj = Injection::parse(inject_names);

        if (c_predict->parsed()) {
            SrgInfo info = srg_info(parse_family(family), q, m);
            auto tgts = targets_of(target);
            if (tgts.size() == 1) {
                emit(predict_object(info, tgts[0], inj), jsonpath);
            } else {
                json j;
                j["family"] = family_name(info.fam);
                j["q"] = q;
                j["m"] = m;
                j["target"] = "both";
                j["smith"] = predict_object(info, Target::Smith, inj);
                j["critical"] = predict_object(info, Target::Critical, inj);
                emit(j, jsonpath);
            }
            return 0;
        }

        if (c_compute->parsed()) {
            Family fam = parse_family(family);
            auto tgts = targets_of(target);
            if (tgts.size() == 1) {
                emit(compute_object(fam, q, m, tgts[0], vmax), jsonpath);
            } else {
                json j;
                j["family"] = family;
                j["q"] = q;
                j["m"] = m;
                j["target"] = "both";
                j["smith"] = compute_object(fam, q, m, Target::Smith, vmax);
                j["critical"] = compute_object(fam, q, m, Target::Critical, vmax);
                emit(j, jsonpath);
            }
            return 0;
        }

        if (c_verify->parsed()) {
            std::vector<BatteryInstance> instances;
            if (run_battery) {
                instances = battery();
            } else {
                if (family.empty() || q == 0 || m == 0)
                    throw BadInstance("verify needs --battery or --family/--q/--m");
                instances.push_back({parse_family(family), q, m});
            }
            bool ok = false;
            json arr = verify_many(instances, inj, vmax, threads, ok);
            json j;
            if (run_battery) {
                j["battery"] = arr;
                j["match"] = ok;
            } else {
                j = arr[0];
            }
            emit(j, jsonpath);
            return ok ? 0 : 1;
        }

        if (c_export->parsed()) {
            Family fam = parse_family(family);
            PolarGraph graph(fam, q, m, vmax);
            if (outpath.empty()) {
                std::ostringstream n;
                n << family << "_q" << q << "_m" << m << "_" << what << ".txt";
                outpath = n.str();
            }
            std::ofstream out(outpath);
            if (what == "adjacency") {
                write_matrix(graph.adjacency(), out);
            } else if (what == "laplacian") {
                write_matrix(graph.laplacian(), out);
            } else if (what == "points") {
                for (const auto& pt : graph.points()) {
                    for (size_t i = 0; i < pt.size(); ++i) {
                        if (i) out << "\t";
                        out << pt[i];
                    }
                    out << "\n";
                }
            } else {
                throw BadInstance("--what must be adjacency, laplacian or points");
            }
            out.flush();
            if (!out) {
                std::cerr << "error: cannot write " << outpath << "\n";
                return 4;
            }
            return 0;
        }

        if (c_sweep->parsed()) {
            std::vector<BatteryInstance> instances;
            for (long qq = 2; qq <= qmax; ++qq) {
                try {
                    if (factorize(qq).size() != 1) continue;
                } catch (...) {
                    continue;
                }
                for (Family fam : {Family::S, Family::O, Family::OMinus, Family::OPlus, Family::UE,
                                   Family::UO}) {
                    for (long mm = family_min_m(fam); mm <= mmax; ++mm) {
                        SrgInfo info = srg_info(fam, qq, mm);
                        if (info.v > vmax) continue;
                        double ambient = 1;
                        for (long i = 0; i < info.dim; ++i)
                            ambient *= static_cast<double>(info.qt.get_d());
                        if (ambient > 5e7) continue;
                        instances.push_back({fam, qq, mm});
                    }
                }
            }
            bool ok = false;
            json arr = verify_many(instances, inj, vmax, threads, ok);
            json j;
            j["sweep"] = arr;
            j["instances"] = instances.size();
            j["match"] = ok;
            emit(j, jsonpath);
            return ok ? 0 : 1;
        }
    } catch (const BadInstance& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    } catch (const ResourceBound& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 3;
    } catch (const std::ios_base::failure& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 4;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
    return 0;
}
