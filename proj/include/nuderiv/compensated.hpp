#pragma once

#include <cmath>

namespace nuderiv {

// Neumaier variant of Kahan summation: also correct when the addend is
// larger than the running sum, which happens at the start of most of
// the Bessel-product series.
template <class T = double>
class CompensatedSum {
public:
    void add(T v) {
        T t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v))
            comp_ += (sum_ - t) + v;
        else
            comp_ += (v - t) + sum_;
        sum_ = t;
    }
    CompensatedSum& operator+=(T v) {
        add(v);
        return *this;
    }
    T value() const { return sum_ + comp_; }

private:
    T sum_{};
    T comp_{};
};

}  // namespace nuderiv
