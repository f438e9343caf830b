#ifndef RHT_SCALAR_HPP
#define RHT_SCALAR_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>
#include <string_view>

namespace rht {

/* Exact rational scalar. boost keeps gcd(num,den)=1 and den>0; no floating
 * point is used anywhere in the kernel. */
using Scalar = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

struct SpecParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct HypothesisError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BrokenComplexError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::string scalar_str(const Scalar& s)
{
    if (denominator(s) == 1)
        return numerator(s).str();
    return numerator(s).str() + "/" + denominator(s).str();
}

/* Accepts "p", "-p", "p/q". */
inline Scalar parse_scalar(std::string_view text)
{
    std::string t(text);
    auto slash = t.find('/');
    try {
        if (slash == std::string::npos)
            return Scalar(BigInt(t));
        BigInt num(t.substr(0, slash));
        BigInt den(t.substr(slash + 1));
        if (den == 0)
            throw SpecParseError("zero denominator in rational literal: " + t);
        return Scalar(num, den);
    } catch (const std::runtime_error&) {
        throw SpecParseError("bad rational literal: " + t);
    }
}

}  // namespace rht

#endif
