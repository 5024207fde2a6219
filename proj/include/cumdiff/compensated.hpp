#pragma once

namespace cumdiff {

/*
 * Neumaier's variant of Kahan summation. Unlike plain Kahan it stays
 * accurate when an addend is larger in magnitude than the running sum,
 * which happens routinely with skewed weights and sign-alternating
 * response differences.
 */
class CompensatedSum {
 public:
  CompensatedSum& operator+=(double value) {
    const double t = sum_ + value;
    if ((sum_ >= 0 ? sum_ : -sum_) >= (value >= 0 ? value : -value)) {
      compensation_ += (sum_ - t) + value;
    } else {
      compensation_ += (value - t) + sum_;
    }
    sum_ = t;
    return *this;
  }

  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

}  // namespace cumdiff
