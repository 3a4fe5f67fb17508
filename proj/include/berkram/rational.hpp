#pragma once

#include <gmpxx.h>

#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>

namespace berkram {

using Int = mpz_class;
using Rat = mpq_class;

enum class errc {
    domain_mismatch,
    division_by_zero,
    hensel_condition_failed,
    constant_map,
    inseparable_map,
    zero_polynomial,
    infinite_distance,
    pole_in_disk,
    non_integer_radius,
    undecidable,
    convention_unsatisfiable,
    unknown_multiplicity,
    normalization_violated,
    characteristic_p,
    probe_not_in_ball,
    schema_error,
    io_error,
    invalid_argument,
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::domain_mismatch: return "DomainMismatch";
        case errc::division_by_zero: return "DivisionByZero";
        case errc::hensel_condition_failed: return "HenselConditionFailed";
        case errc::constant_map: return "ConstantMap";
        case errc::inseparable_map: return "InseparableMap";
        case errc::zero_polynomial: return "ZeroPolynomial";
        case errc::infinite_distance: return "InfiniteDistance";
        case errc::pole_in_disk: return "PoleInDisk";
        case errc::non_integer_radius: return "NonIntegerRadius";
        case errc::undecidable: return "Undecidable";
        case errc::convention_unsatisfiable: return "ConventionUnsatisfiable";
        case errc::unknown_multiplicity: return "UnknownMultiplicity";
        case errc::normalization_violated: return "NormalizationViolated";
        case errc::characteristic_p: return "CharacteristicP";
        case errc::probe_not_in_ball: return "ProbeNotInBall";
        case errc::schema_error: return "SchemaError";
        case errc::io_error: return "IOError";
        case errc::invalid_argument: return "InvalidArgument";
    }
    return "UnknownError";
}

class error : public std::runtime_error {
  public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
    errc code() const { return code_; }

  private:
    errc code_;
};

inline Rat make_rat(long num, long den = 1) {
    if (den == 0) throw error(errc::division_by_zero, "rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline std::string rat_to_string(const Rat& r) { return r.get_str(); }

inline Rat rat_from_string(std::string_view s) {
    if (s.empty()) throw error(errc::schema_error, "empty rational string");
    Rat r;
    if (r.set_str(std::string(s), 10) != 0)
        throw error(errc::schema_error, "malformed rational: " + std::string(s));
    if (r.get_den() == 0)
        throw error(errc::schema_error, "rational with zero denominator: " + std::string(s));
    r.canonicalize();
    return r;
}

inline bool rat_is_integer(const Rat& r) { return r.get_den() == 1; }

// x^e for integer e of either sign; x != 0 when e < 0.
inline Rat rat_pow(const Rat& x, long e) {
    if (e == 0) return Rat(1);
    Rat base = x;
    if (e < 0) {
        if (base == 0) throw error(errc::division_by_zero, "0^negative");
        base = 1 / base;
        e = -e;
    }
    Rat acc(1);
    while (e > 0) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

// A rational number or +infinity.  Valuations and log-radii live here:
// ord(0) = +inf, and the type I point zeta_a has log-radius +inf.
struct ExtVal {
    bool infinite = false;
    Rat value{};

    ExtVal() = default;
    explicit ExtVal(Rat v) : infinite(false), value(std::move(v)) {}
    ExtVal(long num, long den) : infinite(false), value(make_rat(num, den)) {}

    static ExtVal inf() {
        ExtVal e;
        e.infinite = true;
        return e;
    }
    static ExtVal of(Rat v) { return ExtVal(std::move(v)); }

    bool is_finite() const { return !infinite; }

    const Rat& finite() const {
        if (infinite) throw error(errc::invalid_argument, "value is +inf");
        return value;
    }

    friend bool operator==(const ExtVal& a, const ExtVal& b) {
        if (a.infinite || b.infinite) return a.infinite == b.infinite;
        return a.value == b.value;
    }
    friend bool operator<(const ExtVal& a, const ExtVal& b) {
        if (a.infinite) return false;
        if (b.infinite) return true;
        return a.value < b.value;
    }
    friend bool operator<=(const ExtVal& a, const ExtVal& b) { return a == b || a < b; }
    friend bool operator>(const ExtVal& a, const ExtVal& b) { return b < a; }
    friend bool operator>=(const ExtVal& a, const ExtVal& b) { return b <= a; }

    // +inf is absorbing.
    friend ExtVal operator+(const ExtVal& a, const ExtVal& b) {
        if (a.infinite || b.infinite) return inf();
        return ExtVal(a.value + b.value);
    }
    friend ExtVal operator+(const ExtVal& a, const Rat& b) {
        if (a.infinite) return inf();
        return ExtVal(a.value + b);
    }

    friend ExtVal min(const ExtVal& a, const ExtVal& b) { return a < b ? a : b; }
    friend ExtVal max(const ExtVal& a, const ExtVal& b) { return a < b ? b : a; }

    std::string str() const { return infinite ? "inf" : rat_to_string(value); }

    static ExtVal parse(std::string_view s) {
        if (s == "inf") return inf();
        return ExtVal(rat_from_string(s));
    }
};

}  // namespace berkram
