#include "two5k/jdd.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace two5k {

double JddMatrix::total_mass() const {
    double m = 0.0;
    for (const auto& [k, v] : cells_) m += v;
    return m;
}

std::map<int, double> JddMatrix::volumes() const {
    std::map<int, double> vol;
    for (const auto& [key, count] : cells_) {
        int k = static_cast<int>(key >> 32);
        int l = static_cast<int>(key & 0xffffffffu);
        if (k == l) {
            vol[k] += 2.0 * count;
        } else {
            vol[k] += count;
            vol[l] += count;
        }
    }
    return vol;
}

std::map<int, double> JddMatrix::degree_counts() const {
    std::map<int, double> d;
    for (const auto& [k, v] : volumes())
        if (k > 0) d[k] = v / k;
    return d;
}

std::vector<int> JddMatrix::degrees() const {
    std::set<int> ks;
    for (const auto& [key, count] : cells_) {
        (void)count;
        ks.insert(static_cast<int>(key >> 32));
        ks.insert(static_cast<int>(key & 0xffffffffu));
    }
    return {ks.begin(), ks.end()};
}

std::vector<JddMatrix::Entry> JddMatrix::sorted_entries() const {
    std::vector<Entry> out;
    out.reserve(cells_.size());
    for (const auto& [key, count] : cells_)
        out.push_back({static_cast<int>(key >> 32), static_cast<int>(key & 0xffffffffu), count});
    std::sort(out.begin(), out.end(), [](const Entry& a, const Entry& b) {
        return a.k != b.k ? a.k < b.k : a.l < b.l;
    });
    return out;
}

bool JddMatrix::is_integral(double eps) const {
    for (const auto& [key, count] : cells_) {
        (void)key;
        if (std::abs(count - std::round(count)) > eps) return false;
    }
    return true;
}

bool JddMatrix::has_negative() const {
    for (const auto& [key, count] : cells_) {
        (void)key;
        if (count < 0.0) return true;
    }
    return false;
}

double JddMatrix::absolute_difference(const JddMatrix& a, const JddMatrix& b) {
    double sum = 0.0;
    for (const auto& [key, count] : a.cells_) {
        auto it = b.cells_.find(key);
        sum += std::abs(count - (it == b.cells_.end() ? 0.0 : it->second));
    }
    for (const auto& [key, count] : b.cells_)
        if (!a.cells_.count(key)) sum += std::abs(count);
    return sum;
}

std::string format_count(double v) {
    if (v == std::round(v) && std::abs(v) < 1e15) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.0f", v);
        return buf;
    }
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void save_jdd(const JddMatrix& jdd, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write jdd file: " + path);
    for (const auto& e : jdd.sorted_entries())
        out << e.k << ' ' << e.l << ' ' << format_count(e.count) << '\n';
}

JddMatrix load_jdd(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open jdd file: " + path);
    JddMatrix jdd;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        int k, l;
        double c;
        if (!(ls >> k >> l >> c)) throw std::runtime_error("malformed jdd line: " + line);
        jdd.add(k, l, c);
    }
    return jdd;
}

void save_ck(const DegreeClustering& ck, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write ck file: " + path);
    for (const auto& [k, v] : ck) out << k << ' ' << format_count(v) << '\n';
}

DegreeClustering load_ck(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open ck file: " + path);
    DegreeClustering ck;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        int k;
        double v;
        if (!(ls >> k >> v)) throw std::runtime_error("malformed ck line: " + line);
        ck[k] = v;
    }
    return ck;
}

}  // namespace two5k
