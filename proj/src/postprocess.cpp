#include "two5k/postprocess.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "two5k/graph_metrics.hpp"
#include "two5k/rng.hpp"

namespace two5k {

JddMatrix smooth_jdd(const JddMatrix& jdd) {
    if (jdd.empty()) throw std::invalid_argument("smooth_jdd: empty matrix");
    auto entries = jdd.sorted_entries();
    if (entries.size() <= 1) return jdd;
    for (const auto& e : entries)
        if (e.k < 1 || e.l < 1) throw std::invalid_argument("smooth_jdd: degrees must be >= 1");

    const double mass = jdd.total_mass();
    // ordered-pair representation: off-diagonal mass split over (k,l) and (l,k)
    std::map<int, double> marginal;
    int max_deg = 0;
    for (const auto& e : entries) {
        max_deg = std::max(max_deg, e.l);
        if (e.k == e.l) {
            marginal[e.k] += e.count;
        } else {
            marginal[e.k] += e.count / 2.0;
            marginal[e.l] += e.count / 2.0;
        }
    }
    double mean = 0.0, sq = 0.0;
    for (const auto& [k, w] : marginal) {
        mean += k * w;
        sq += static_cast<double>(k) * k * w;
    }
    mean /= mass;
    sq /= mass;
    const double var = sq - mean * mean;
    if (var <= 0.0) return jdd;

    // Scott's rule for d = 2
    const double h = std::sqrt(var) * std::pow(mass, -1.0 / 6.0);
    if (h < 1e-3) return jdd;
    const int radius = std::max(1, static_cast<int>(std::ceil(3.0 * h)));

    const std::size_t grid = static_cast<std::size_t>(max_deg) + radius + 1;
    if (grid * grid > 200'000'000)
        throw std::runtime_error("smooth_jdd: degree grid too large (" + std::to_string(grid) + "^2)");

    std::vector<double> kernel(2 * radius + 1);
    double ksum = 0.0;
    for (int d = -radius; d <= radius; ++d) {
        kernel[d + radius] = std::exp(-0.5 * d * d / (h * h));
        ksum += kernel[d + radius];
    }
    for (double& w : kernel) w /= ksum;

    std::vector<double> a(grid * grid, 0.0), b(grid * grid, 0.0);
    auto cell = [grid](std::size_t k, std::size_t l) { return k * grid + l; };
    for (const auto& e : entries) {
        if (e.k == e.l) {
            a[cell(e.k, e.k)] += e.count;
        } else {
            a[cell(e.k, e.l)] += e.count / 2.0;
            a[cell(e.l, e.k)] += e.count / 2.0;
        }
    }

    // Scatter source mass through the kernel; indices below 1 reflect back
    // (degree 0 is impossible for an edge endpoint).
    auto scatter_1d = [&](double w, std::size_t fixed, std::size_t moving, bool rows,
                          std::vector<double>& out) {
        for (int d = -radius; d <= radius; ++d) {
            std::int64_t t = static_cast<std::int64_t>(moving) + d;
            if (t < 1) t = 2 - t;
            if (t >= static_cast<std::int64_t>(grid)) continue;
            out[rows ? cell(fixed, t) : cell(t, fixed)] += w * kernel[d + radius];
        }
    };
    for (std::size_t k = 1; k < grid; ++k)
        for (std::size_t l = 1; l < grid; ++l)
            if (double w = a[cell(k, l)]; w != 0.0) scatter_1d(w, k, l, true, b);
    std::fill(a.begin(), a.end(), 0.0);
    for (std::size_t k = 1; k < grid; ++k)
        for (std::size_t l = 1; l < grid; ++l)
            if (double w = b[cell(k, l)]; w != 0.0) scatter_1d(w, l, k, false, a);

    double out_mass = 0.0;
    for (double w : a) out_mass += w;
    const double scale = mass / out_mass;

    JddMatrix smoothed;
    for (std::size_t k = 1; k < grid; ++k) {
        if (double w = a[cell(k, k)] * scale; w > 1e-12) smoothed.set(static_cast<int>(k), static_cast<int>(k), w);
        for (std::size_t l = k + 1; l < grid; ++l) {
            double w = (a[cell(k, l)] + a[cell(l, k)]) * scale;
            if (w > 1e-12) smoothed.set(static_cast<int>(k), static_cast<int>(l), w);
        }
    }
    return smoothed;
}

JddMatrix stochastic_round(const JddMatrix& jdd, std::uint64_t seed) {
    if (jdd.has_negative()) throw std::invalid_argument("stochastic_round: negative entries");
    Rng rng(seed);
    JddMatrix out;
    for (const auto& e : jdd.sorted_entries()) {
        double base = std::floor(e.count);
        double frac = e.count - base;
        double v = base + (frac > 0.0 && rng.bernoulli(frac) ? 1.0 : 0.0);
        if (v > 0.0) out.set(e.k, e.l, v);
    }
    return out;
}

namespace {

std::int64_t cap_pair(std::int64_t dk, std::int64_t dl) { return dk * dl; }
std::int64_t cap_diag(std::int64_t dk) { return dk * (dk - 1) / 2; }

}  // namespace

RealizabilityCheck verify_realizability(const JddMatrix& jdd) {
    RealizabilityCheck check;
    auto fail = [&](const std::string& msg) {
        check.pass = false;
        check.violations.push_back(msg);
    };

    for (const auto& e : jdd.sorted_entries()) {
        if (e.count < 0.0 || std::abs(e.count - std::round(e.count)) > 1e-9) {
            fail("(i) non-integral or negative count at (" + std::to_string(e.k) + "," +
                 std::to_string(e.l) + "): " + format_count(e.count));
        }
    }

    auto volumes = jdd.volumes();
    std::map<int, std::int64_t> d_floor;
    for (const auto& [k, vol] : volumes) {
        if (k < 1) {
            fail("(i) degree < 1 present");
            continue;
        }
        double d = vol / k;
        d_floor[k] = static_cast<std::int64_t>(std::floor(d + 1e-9));
        if (std::abs(d - std::round(d)) > 1e-9)
            fail("(ii) D(" + std::to_string(k) + ") = " + format_count(d) + " not an integer");
    }

    for (const auto& e : jdd.sorted_entries()) {
        std::int64_t c = static_cast<std::int64_t>(std::llround(e.count));
        if (e.k == e.l) {
            if (c > cap_diag(d_floor[e.k]))
                fail("(iv) JDD(" + std::to_string(e.k) + "," + std::to_string(e.k) + ") = " +
                     std::to_string(c) + " exceeds C(D,2) = " + std::to_string(cap_diag(d_floor[e.k])));
        } else {
            if (c > cap_pair(d_floor[e.k], d_floor[e.l]))
                fail("(iii) JDD(" + std::to_string(e.k) + "," + std::to_string(e.l) + ") = " +
                     std::to_string(c) + " exceeds D(k)*D(l) = " +
                     std::to_string(cap_pair(d_floor[e.k], d_floor[e.l])));
        }
    }

    // (v): k*D(k) minus the off-diagonal row sum must be even (it equals twice
    // the diagonal entry under single-count storage).
    for (const auto& [k, vol] : volumes) {
        if (k < 1) continue;
        double offdiag = vol - 2.0 * jdd.at(k, k);
        double p = static_cast<double>(k) * d_floor[k] - offdiag;
        std::int64_t pi = static_cast<std::int64_t>(std::llround(p));
        if (std::abs(p - pi) > 1e-6 || pi < 0 || pi % 2 != 0)
            fail("(v) odd same-degree edge endpoints at degree " + std::to_string(k));
    }
    return check;
}

namespace {

// Integer working copy of a JDD during repair.
struct RepairState {
    std::map<std::pair<int, int>, std::int64_t> cells;  // k <= l
    std::map<int, std::int64_t> target_d;               // D(k) targets
    std::map<int, std::int64_t> delta;                  // k*D(k) - current volume

    std::int64_t& at(int k, int l) {
        if (k > l) std::swap(k, l);
        return cells[{k, l}];
    }
    std::int64_t get(int k, int l) const {
        if (k > l) std::swap(k, l);
        auto it = cells.find({k, l});
        return it == cells.end() ? 0 : it->second;
    }
    std::int64_t cap(int k, int l) const {
        auto dk = target_d.at(k);
        return k == l ? cap_diag(dk) : cap_pair(dk, target_d.at(l));
    }
    // vol(k) += amount for a unit change of (k,l); both rows for off-diagonal
    void bump(int k, int l, std::int64_t units) {
        at(k, l) += units;
        if (k == l) {
            delta[k] -= 2 * units;
        } else {
            delta[k] -= units;
            delta[l] -= units;
        }
    }
};

}  // namespace

RepairResult repair_realizability(const JddMatrix& jdd, std::uint64_t seed) {
    if (jdd.empty()) throw std::invalid_argument("repair_realizability: empty matrix");
    if (!jdd.is_integral() || jdd.has_negative())
        throw std::invalid_argument("repair_realizability: matrix must be non-negative integers");

    RepairResult result;
    auto finish = [&](const std::map<std::pair<int, int>, std::int64_t>& cells,
                      const std::map<int, std::int64_t>& d) {
        TargetSpec spec;
        for (const auto& [kl, c] : cells)
            if (c > 0) spec.jdd.set(kl.first, kl.second, static_cast<double>(c));
        for (const auto& [k, count] : d) {
            if (count > 0) {
                spec.degree_nodes[k] = count;
                spec.n_nodes += count;
            }
        }
        result.spec = std::move(spec);
        result.units_changed =
            static_cast<std::int64_t>(std::llround(JddMatrix::absolute_difference(jdd, result.spec.jdd)));
        auto check = verify_realizability(result.spec.jdd);
        if (!check.pass)
            throw RepairFailure("repair produced an unrealizable matrix: " + check.violations.front());
        return result;
    };

    if (auto check = verify_realizability(jdd); check.pass) {
        std::map<std::pair<int, int>, std::int64_t> cells;
        std::map<int, std::int64_t> d;
        for (const auto& e : jdd.sorted_entries())
            cells[{e.k, e.l}] = static_cast<std::int64_t>(std::llround(e.count));
        for (const auto& [k, v] : jdd.degree_counts()) d[k] = static_cast<std::int64_t>(std::llround(v));
        return finish(cells, d);
    }

    Rng rng(seed);
    RepairState st;
    for (const auto& e : jdd.sorted_entries())
        st.cells[{e.k, e.l}] = static_cast<std::int64_t>(std::llround(e.count));

    // Round every row's node count, stochastically on fractional rows; a row
    // with mass keeps at least one node.
    auto volumes = jdd.volumes();
    for (const auto& [k, vol] : volumes) {
        double x = vol / k;
        std::int64_t d = static_cast<std::int64_t>(std::floor(x + 1e-9));
        double frac = x - static_cast<double>(d);
        if (frac > 1e-9 && rng.bernoulli(frac)) ++d;
        st.target_d[k] = std::max<std::int64_t>(d, 1);
    }

    // Total edge endpoints must be even; flip the cheapest odd-degree row if not.
    auto endpoint_sum = [&]() {
        std::int64_t s = 0;
        for (const auto& [k, d] : st.target_d) s += static_cast<std::int64_t>(k) * d;
        return s;
    };
    if (endpoint_sum() % 2 != 0) {
        int best_k = 0;
        double best_cost = 1e300;
        for (const auto& [k, d] : st.target_d) {
            if (k % 2 == 0) continue;
            for (std::int64_t cand : {d - 1, d + 1}) {
                if (cand < 1) continue;
                double cost = std::abs(static_cast<double>(k) * cand - volumes[k]);
                if (cost < best_cost) {
                    best_cost = cost;
                    best_k = k;
                    st.target_d[k] = cand;  // tentative; fixed below
                }
            }
        }
        if (best_k == 0)
            throw RepairFailure("cannot fix global parity: no odd degree in the matrix");
        // re-evaluate which direction was stored last; recompute cleanly
        std::int64_t d0 = static_cast<std::int64_t>(std::floor(volumes[best_k] / best_k + 1e-9));
        std::int64_t lo = std::max<std::int64_t>(1, d0), hi = d0 + 1;
        if (lo % 2 == hi % 2) lo = std::max<std::int64_t>(1, d0 - 1);
        std::int64_t pick =
            std::abs(static_cast<double>(best_k) * lo - volumes[best_k]) <=
                    std::abs(static_cast<double>(best_k) * hi - volumes[best_k])
                ? lo
                : hi;
        st.target_d[best_k] = pick;
        if (endpoint_sum() % 2 != 0) st.target_d[best_k] += 1;
    }

    // Clamp entries that exceed their caps, then track per-row volume deltas.
    for (auto& [kl, c] : st.cells) {
        std::int64_t cp = st.cap(kl.first, kl.second);
        if (c > cp) c = cp;
    }
    for (const auto& [k, d] : st.target_d) st.delta[k] = static_cast<std::int64_t>(k) * d;
    for (const auto& [kl, c] : st.cells) {
        if (kl.first == kl.second)
            st.delta[kl.first] -= 2 * c;
        else {
            st.delta[kl.first] -= c;
            st.delta[kl.second] -= c;
        }
    }

    std::vector<int> degrees;
    for (const auto& [k, d] : st.target_d) degrees.push_back(k);

    auto phi = [&]() {
        std::int64_t s = 0;
        for (const auto& [k, d] : st.delta) s += std::abs(d);
        return s;
    };

    const std::int64_t max_steps = 1000 + 20 * phi() + 40 * static_cast<std::int64_t>(degrees.size());
    std::int64_t escalations_left = 64 + static_cast<std::int64_t>(degrees.size());

    for (std::int64_t step = 0; step < max_steps; ++step) {
        if (phi() == 0) return finish(st.cells, st.target_d);

        int k = 0;
        for (int cand : degrees)
            if (st.delta[cand] != 0) {
                k = cand;
                break;
            }
        std::int64_t dk = st.delta[k];
        bool moved = false;

        if (dk >= 2 && st.get(k, k) < st.cap(k, k)) {
            st.bump(k, k, 1);
            moved = true;
        }
        if (!moved && dk >= 1) {
            // pair with another deficient row
            for (int l : degrees) {
                if (l == k || st.delta[l] < 1) continue;
                if (st.get(k, l) < st.cap(k, l)) {
                    st.bump(k, l, 1);
                    moved = true;
                    break;
                }
            }
        }
        if (!moved && dk <= -2 && st.get(k, k) > 0) {
            st.bump(k, k, -1);
            moved = true;
        }
        if (!moved && dk <= -1) {
            // drop an edge shared with another overfull row
            for (int l : degrees) {
                if (l == k || st.delta[l] > -1) continue;
                if (st.get(k, l) > 0) {
                    st.bump(k, l, -1);
                    moved = true;
                    break;
                }
            }
        }
        if (!moved && dk >= 1) {
            // lone surplus paired against a deficit elsewhere:
            // add (k,m) and remove (l,m) for a deficit row l
            for (int l : degrees) {
                if (l == k || st.delta[l] > -1) continue;
                for (int m : degrees) {
                    if (m == l) continue;
                    if (st.get(l, m) <= 0) continue;
                    if (m == k) {
                        if (st.get(k, k) >= st.cap(k, k)) continue;
                        st.bump(k, k, 1);   // delta(k) -= 2
                        st.bump(l, k, -1);  // delta(k) += 1, delta(l) += 1
                    } else {
                        if (st.get(k, m) >= st.cap(k, m)) continue;
                        st.bump(k, m, 1);
                        st.bump(l, m, -1);
                    }
                    moved = true;
                    break;
                }
                if (moved) break;
            }
        }
        if (!moved && dk <= -1) {
            // mirror: remove (k,m), add (l,m) for a surplus row l
            for (int l : degrees) {
                if (l == k || st.delta[l] < 1) continue;
                for (int m : degrees) {
                    if (st.get(k, m) <= 0 || m == k) continue;
                    if (m == l) {
                        if (st.get(l, l) >= st.cap(l, l)) continue;
                        st.bump(k, l, -1);
                        st.bump(l, l, 1);
                    } else {
                        if (st.get(l, m) >= st.cap(l, m)) continue;
                        st.bump(k, m, -1);
                        st.bump(l, m, 1);
                    }
                    moved = true;
                    break;
                }
                if (moved) break;
            }
        }
        if (!moved && dk <= -1 && st.get(k, k) > 0) {
            // odd leftover with only diagonal mass: overshoot once, the
            // surplus pass resolves the +1
            st.bump(k, k, -1);
            moved = true;
        }
        if (!moved && dk <= -1) {
            // relax through a balanced row
            for (int m : degrees) {
                if (m == k || st.get(k, m) <= 0) continue;
                st.bump(k, m, -1);
                moved = true;
                break;
            }
        }

        if (!moved) {
            // row is capped everywhere; more nodes raise the caps
            if (escalations_left-- <= 0)
                throw RepairFailure("repair budget exhausted at degree " + std::to_string(k));
            std::int64_t bump_nodes = (k % 2 == 0) ? 1 : 2;
            st.target_d[k] += bump_nodes;
            st.delta[k] += static_cast<std::int64_t>(k) * bump_nodes;
        }
    }
    throw RepairFailure("repair step budget exhausted (phi = " + std::to_string(phi()) + ")");
}

std::vector<int> attach_ck(TargetSpec& spec, const DegreeClustering& ck) {
    std::vector<int> dropped;
    for (const auto& [k, v] : ck) {
        if (spec.degree_nodes.count(k))
            spec.ck[k] = v;
        else
            dropped.push_back(k);
    }
    return dropped;
}

TargetSpec build_target(const EstimateBundle& bundle, const PostprocessOptions& opts,
                        PostprocessReport* report) {
    if (bundle.jdd.empty()) throw std::invalid_argument("build_target: empty JDD estimate");
    JddMatrix jdd = bundle.jdd;
    PostprocessReport rep;
    if (opts.smooth &&
        static_cast<int>(jdd.degrees().size()) > opts.min_degrees_for_smoothing) {
        jdd = smooth_jdd(jdd);
        rep.smoothed = true;
    }
    std::uint64_t master = opts.seed;
    JddMatrix rounded = stochastic_round(jdd, derive_seed(master, 1));
    if (rounded.empty()) throw std::invalid_argument("build_target: estimate rounded to an empty matrix");
    rep.mass_before = rounded.total_mass();
    RepairResult repaired = repair_realizability(rounded, derive_seed(master, 2));
    rep.units_changed = repaired.units_changed;
    rep.dropped_ck_degrees = attach_ck(repaired.spec, bundle.ck);
    if (report) *report = rep;
    return std::move(repaired.spec);
}

TargetSpec target_from_graph(const Graph& g) {
    TargetSpec spec;
    spec.jdd = exact_jdd(g);
    spec.ck = degree_clustering(g);
    for (const auto& [k, v] : spec.jdd.degree_counts()) {
        std::int64_t d = static_cast<std::int64_t>(std::llround(v));
        spec.degree_nodes[k] = d;
        spec.n_nodes += d;
    }
    return spec;
}

void save_target(const TargetSpec& spec, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write target spec: " + path);
    out << "N " << spec.n_nodes << '\n';
    out << "JDD\n";
    for (const auto& e : spec.jdd.sorted_entries())
        out << e.k << ' ' << e.l << ' ' << format_count(e.count) << '\n';
    out << "CK\n";
    for (const auto& [k, v] : spec.ck) out << k << ' ' << format_count(v) << '\n';
}

TargetSpec load_target(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open target spec: " + path);
    TargetSpec spec;
    std::string line;
    enum { HEAD, JDD, CK } section = HEAD;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (line == "JDD") {
            section = JDD;
            continue;
        }
        if (line == "CK") {
            section = CK;
            continue;
        }
        std::istringstream ls(line);
        if (section == HEAD) {
            std::string tag;
            std::uint64_t n;
            if (!(ls >> tag >> n) || tag != "N")
                throw std::runtime_error("target spec must start with an N header");
            spec.n_nodes = n;
        } else if (section == JDD) {
            int k, l;
            double c;
            if (!(ls >> k >> l >> c)) throw std::runtime_error("malformed JDD line: " + line);
            spec.jdd.add(k, l, c);
        } else {
            int k;
            double v;
            if (!(ls >> k >> v)) throw std::runtime_error("malformed CK line: " + line);
            spec.ck[k] = v;
        }
    }
    for (const auto& [k, v] : spec.jdd.degree_counts())
        spec.degree_nodes[k] = static_cast<std::int64_t>(std::llround(v));
    std::int64_t total = 0;
    for (const auto& [k, d] : spec.degree_nodes) total += d;
    if (spec.n_nodes == 0) spec.n_nodes = total;
    if (static_cast<std::int64_t>(spec.n_nodes) != total)
        throw std::runtime_error("target spec N does not match the JDD row sums");
    auto check = verify_realizability(spec.jdd);
    if (!check.pass)
        throw std::runtime_error("target spec is not realizable: " + check.violations.front());
    return spec;
}

}  // namespace two5k
