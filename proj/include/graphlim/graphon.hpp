#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace graphlim {

// Piecewise-constant symmetric kernel on [0,1]^2: block masses (positive,
// summing to 1) plus a symmetric block-value matrix with entries in [0,1].
struct StepGraphon {
    std::vector<double> masses;
    std::vector<std::vector<double>> values;

    int block_count() const { return static_cast<int>(masses.size()); }
    void validate() const;
};

StepGraphon constant_graphon(double p);
// Two blocks of mass c and 1-c with value matrix [[p11,p12],[p12,p22]].
StepGraphon two_block_graphon(double c, double p11, double p12, double p22);
// Equal blocks, 1/2-eps on diagonal blocks and 1/2+eps off-diagonal.
StepGraphon symmetric_two_block(double eps);

// JSON format: {"masses":[...], "values":[[...],...]}.
StepGraphon read_graphon(std::istream& in);
StepGraphon read_graphon_file(const std::string& path);
void write_graphon(std::ostream& out, const StepGraphon& w);
void write_graphon_file(const std::string& path, const StepGraphon& w);

// Common refinement of two block partitions. Merged boundaries closer than
// 1e-12 collapse; blocks of mass below 1e-14 are dropped. idx_a/idx_b map
// each refined block back to its source block.
struct Refinement {
    std::vector<double> weights;
    std::vector<int> idx_a;
    std::vector<int> idx_b;
};
Refinement common_refinement(const StepGraphon& a, const StepGraphon& b);

}  // namespace graphlim
