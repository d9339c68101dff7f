#include "ftlab/rational.hpp"

namespace ftlab {

BigRational rational_from_string(const std::string& s) {
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return BigRational(BigInt(s), 1);
        const BigInt num(s.substr(0, slash));
        const BigInt den(s.substr(slash + 1));
        if (den == 0) throw ValidationError("rational_from_string: zero denominator");
        return BigRational(num, den);
    } catch (const std::runtime_error&) {
        throw ValidationError("rational_from_string: malformed rational '" + s + "'");
    }
}

} // namespace ftlab
