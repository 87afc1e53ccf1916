#include "fillvol/numeric.hpp"

#include "fillvol/errors.hpp"

namespace fillvol {

std::string rat_to_string(const Rat& x) {
    Int num = boost::multiprecision::numerator(x);
    Int den = boost::multiprecision::denominator(x);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

Rat rat_from_string(const std::string& s) {
    try {
        auto slash = s.find('/');
        if (slash == std::string::npos) return Rat(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) throw SchemaError("rational with zero denominator: " + s);
        return Rat(num, den);
    } catch (const std::exception&) {
        throw SchemaError("cannot parse rational: " + s);
    }
}

Int rat_floor(const Rat& x) {
    Int num = boost::multiprecision::numerator(x);
    Int den = boost::multiprecision::denominator(x);
    Int q = num / den;
    if (num < 0 && q * den != num) --q;
    return q;
}

}  // namespace fillvol
