#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

namespace two5k {

// Degree k -> average clustering coefficient of the nodes of degree k.
// Keys are >= 2, values in [0, 1].
using DegreeClustering = std::map<int, double>;

// Sparse symmetric joint degree matrix: unordered degree pair (k, l) with
// k <= l -> number of edges between nodes of degree k and degree l.
// A same-degree edge is stored ONCE at (k, k); the degree-count derivation
// compensates with a factor of 2.
// Counts are real-valued while estimates flow through the pipeline and
// integral once a target has been repaired.
class JddMatrix {
public:
    struct Entry {
        int k;
        int l;
        double count;
    };

    double at(int k, int l) const {
        auto it = cells_.find(key(k, l));
        return it == cells_.end() ? 0.0 : it->second;
    }

    void add(int k, int l, double w) {
        if (w == 0.0) return;
        cells_[key(k, l)] += w;
    }

    void set(int k, int l, double w) {
        if (w == 0.0)
            cells_.erase(key(k, l));
        else
            cells_[key(k, l)] = w;
    }

    bool contains(int k, int l) const { return cells_.count(key(k, l)) > 0; }

    std::size_t size() const { return cells_.size(); }
    bool empty() const { return cells_.empty(); }

    double total_mass() const;

    // volume(k) = sum_{l != k} J(k,l) + 2 * J(k,k): edge endpoints at degree k.
    std::map<int, double> volumes() const;

    // D(k) = volume(k) / k.
    std::map<int, double> degree_counts() const;

    std::vector<int> degrees() const;

    // Entries sorted by (k, l); the canonical iteration order.
    std::vector<Entry> sorted_entries() const;

    bool is_integral(double eps = 1e-9) const;
    bool has_negative() const;

    // Sum over the union of keys of |a - b|.
    static double absolute_difference(const JddMatrix& a, const JddMatrix& b);

    bool operator==(const JddMatrix& other) const { return cells_ == other.cells_; }

private:
    static std::uint64_t key(int k, int l) {
        if (k > l) std::swap(k, l);
        return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(k)) << 32) |
               static_cast<std::uint32_t>(l);
    }

    std::unordered_map<std::uint64_t, double> cells_;
};

// Text formats: one "k l count" triple per line for a JDD, one "k value"
// pair per line for degree clustering. '#' lines are comments.
void save_jdd(const JddMatrix& jdd, const std::string& path);
JddMatrix load_jdd(const std::string& path);
void save_ck(const DegreeClustering& ck, const std::string& path);
DegreeClustering load_ck(const std::string& path);

// Round-trip-exact formatting for doubles ("%.17g", but integral values
// print without a fraction).
std::string format_count(double v);

}  // namespace two5k
