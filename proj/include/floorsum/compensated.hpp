#pragma once

#include <cmath>
#include <limits>

namespace floorsum {

// Neumaier's variant of Kahan summation. The running compensation is kept
// separately so partial sums can be merged without losing it.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::fabs(sum_) >= std::fabs(v))
      comp_ += (sum_ - t) + v;
    else
      comp_ += (v - t) + sum_;
    sum_ = t;
    abs_total_ += std::fabs(v);
  }

  void merge(const CompensatedSum& other) {
    add(other.sum_);
    add(other.comp_);
    abs_total_ += other.abs_total_ - std::fabs(other.sum_) - std::fabs(other.comp_);
  }

  double value() const { return sum_ + comp_; }

  // Standard a-priori bound for compensated summation: 2u * sum |x_i|.
  double error_estimate() const {
    return std::numeric_limits<double>::epsilon() * abs_total_;
  }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
  double abs_total_ = 0.0;
};

}  // namespace floorsum
