#pragma once

#include <boost/multiprecision/mpfr.hpp>

namespace hypdet {

using mpfr_float = boost::multiprecision::mpfr_float;

// Sets the thread's default mpfr precision (decimal digits) for the lifetime of the guard.
class MpPrecision {
public:
    explicit MpPrecision(unsigned digits10) : saved_(mpfr_float::default_precision()) {
        mpfr_float::default_precision(digits10);
    }
    ~MpPrecision() { mpfr_float::default_precision(saved_); }
    MpPrecision(const MpPrecision&) = delete;
    MpPrecision& operator=(const MpPrecision&) = delete;

private:
    unsigned saved_;
};

}  // namespace hypdet
