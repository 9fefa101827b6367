#ifndef ELLGR_PREC_HPP
#define ELLGR_PREC_HPP

#include <mpfr.h>
#include <stdexcept>
#include <string>

namespace ellgr {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// precondition violated (division by zero, log of zero, bad argument domain)
struct domain_error : error {
    using error::error;
};

// evaluation point too close to the pole set of a G_r function
struct pole_error : domain_error {
    using domain_error::domain_error;
};

struct parse_error : error {
    using error::error;
};

// Working precision policy: a target number of decimal digits plus guard
// digits, converted to bits.  Series evaluations at level l lose about
// log10(l) digits, so the level feeds into the guard.
class PrecisionContext {
  public:
    explicit PrecisionContext(long digits, long guard_digits = 20)
        : digits_(digits), guard_(guard_digits)
    {
        if (digits <= 0 || guard_digits <= 0)
            throw domain_error("PrecisionContext: digits and guard must be positive");
    }

    long digits() const { return digits_; }
    long guard_digits() const { return guard_; }

    // extra decimal digits to absorb slow series decay at level l
    PrecisionContext with_level(unsigned long level) const
    {
        long extra = 0;
        for (unsigned long v = 1; v < level; v *= 10) extra++;
        PrecisionContext c(digits_, guard_ + extra);
        return c;
    }

    mpfr_prec_t bits() const
    {
        // ceil((digits+guard) * log2(10)), never below 64
        long d = digits_ + guard_;
        mpfr_prec_t b = (mpfr_prec_t)((double)d * 3.3219280948873626 + 1.0);
        return b < 64 ? 64 : b;
    }

    // truncation threshold 10^-(digits+guard) used by series loops
    double log10_eps() const { return -(double)(digits_ + guard_); }

  private:
    long digits_;
    long guard_;
};

} // namespace ellgr

#endif
