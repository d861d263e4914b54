#include "graphlim/graphon.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "graphlim/errors.hpp"

namespace graphlim {

void StepGraphon::validate() const {
    const int k = block_count();
    if (k == 0) throw DomainError("graphon: empty partition");
    double sum = 0;
    for (double m : masses) {
        if (!(m > 0)) throw DomainError("graphon: block masses must be strictly positive");
        sum += m;
    }
    if (std::fabs(sum - 1.0) > 1e-12)
        throw DomainError("graphon: block masses must sum to 1 within 1e-12");
    if (static_cast<int>(values.size()) != k)
        throw DomainError("graphon: value matrix must be k x k");
    for (int i = 0; i < k; ++i) {
        if (static_cast<int>(values[i].size()) != k)
            throw DomainError("graphon: value matrix must be k x k");
        for (int j = 0; j < k; ++j) {
            const double v = values[i][j];
            if (!(v >= 0.0 && v <= 1.0))
                throw DomainError("graphon: values must lie in [0,1]");
            if (std::fabs(v - values[j][i]) > 1e-12)
                throw DomainError("graphon: value matrix must be symmetric");
        }
    }
}

StepGraphon constant_graphon(double p) {
    StepGraphon w{{1.0}, {{p}}};
    w.validate();
    return w;
}

StepGraphon two_block_graphon(double c, double p11, double p12, double p22) {
    StepGraphon w{{c, 1.0 - c}, {{p11, p12}, {p12, p22}}};
    w.validate();
    return w;
}

StepGraphon symmetric_two_block(double eps) {
    return two_block_graphon(0.5, 0.5 - eps, 0.5 + eps, 0.5 - eps);
}

StepGraphon read_graphon(std::istream& in) {
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("graphon: invalid JSON: ") + e.what());
    }
    StepGraphon w;
    try {
        w.masses = j.at("masses").get<std::vector<double>>();
        w.values = j.at("values").get<std::vector<std::vector<double>>>();
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("graphon: bad schema: ") + e.what());
    }
    w.validate();
    // Symmetrize away representation-level asymmetry within the validated
    // 1e-12 tolerance.
    for (int i = 0; i < w.block_count(); ++i)
        for (int j2 = 0; j2 < i; ++j2) w.values[i][j2] = w.values[j2][i];
    return w;
}

StepGraphon read_graphon_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open graphon file: " + path);
    return read_graphon(in);
}

void write_graphon(std::ostream& out, const StepGraphon& w) {
    nlohmann::ordered_json j;
    j["masses"] = w.masses;
    j["values"] = w.values;
    out << j.dump() << '\n';
}

void write_graphon_file(const std::string& path, const StepGraphon& w) {
    std::ofstream out(path);
    if (!out) throw DomainError("cannot open graphon file for writing: " + path);
    write_graphon(out, w);
}

Refinement common_refinement(const StepGraphon& a, const StepGraphon& b) {
    auto boundaries = [](const StepGraphon& w) {
        std::vector<double> cuts{0.0};
        double acc = 0;
        for (double m : w.masses) {
            acc += m;
            cuts.push_back(acc);
        }
        cuts.back() = 1.0;
        return cuts;
    };
    std::vector<double> cuts = boundaries(a);
    {
        std::vector<double> cb = boundaries(b);
        cuts.insert(cuts.end(), cb.begin(), cb.end());
    }
    std::sort(cuts.begin(), cuts.end());
    std::vector<double> merged{cuts.front()};
    for (double c : cuts)
        if (c - merged.back() > 1e-12) merged.push_back(c);
    merged.back() = 1.0;

    auto locate = [](const StepGraphon& w, double x) {
        double acc = 0;
        for (int i = 0; i < w.block_count(); ++i) {
            acc += w.masses[i];
            if (x < acc) return i;
        }
        return w.block_count() - 1;
    };

    Refinement r;
    for (size_t i = 0; i + 1 < merged.size(); ++i) {
        const double weight = merged[i + 1] - merged[i];
        if (weight < 1e-14) continue;
        const double mid = 0.5 * (merged[i] + merged[i + 1]);
        r.weights.push_back(weight);
        r.idx_a.push_back(locate(a, mid));
        r.idx_b.push_back(locate(b, mid));
    }
    return r;
}

}  // namespace graphlim
