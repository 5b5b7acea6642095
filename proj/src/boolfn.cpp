#include "commbound/boolfn.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>

#include "commbound/error.hpp"

namespace commbound {

namespace {

void check_arity(std::size_t n) {
    if (n > kMaxArity) throw ArgumentError("arity " + std::to_string(n) + " exceeds " + std::to_string(kMaxArity));
}

template <class Pred>
BoolFunction from_predicate(std::size_t n, Pred minus_one) {
    check_arity(n);
    std::vector<std::int8_t> t(std::size_t{1} << n);
    for (Mask x = 0; x < t.size(); ++x) t[x] = minus_one(x) ? -1 : 1;
    return BoolFunction(n, std::move(t));
}

// In-place butterfly: a[T] <- sum_x a[x] chi_T(x).
template <class T>
void butterfly(std::vector<T>& a) {
    for (std::size_t len = 1; len < a.size(); len <<= 1)
        for (std::size_t i = 0; i < a.size(); i += len << 1)
            for (std::size_t j = i; j < i + len; ++j) {
                const T u = a[j], v = a[j + len];
                a[j] = u + v;
                a[j + len] = u - v;
            }
}

}  // namespace

BoolFunction::BoolFunction(std::size_t n, std::vector<std::int8_t> table) : n_(n), table_(std::move(table)) {
    check_arity(n);
    if (table_.size() != (std::size_t{1} << n)) {
        throw ArgumentError("truth table has " + std::to_string(table_.size()) + " entries, expected 2^" +
                            std::to_string(n));
    }
    for (auto v : table_)
        if (v != 1 && v != -1) throw ArgumentError("truth table entry is not +1 or -1");
}

BoolFunction BoolFunction::constant(std::size_t n, int value) {
    if (value != 1 && value != -1) throw ArgumentError("constant must be +1 or -1");
    return from_predicate(n, [value](Mask) { return value < 0; });
}

BoolFunction BoolFunction::parity(std::size_t n) {
    return from_predicate(n, [](Mask x) { return __builtin_popcount(x) & 1; });
}

BoolFunction BoolFunction::and_fn(std::size_t n) {
    const Mask full = static_cast<Mask>((std::size_t{1} << n) - 1);
    return from_predicate(n, [full](Mask x) { return x == full; });
}

BoolFunction BoolFunction::or_fn(std::size_t n) {
    return from_predicate(n, [](Mask x) { return x != 0; });
}

BoolFunction BoolFunction::majority(std::size_t n) {
    return from_predicate(n, [n](Mask x) { return 2 * static_cast<std::size_t>(__builtin_popcount(x)) > n; });
}

BoolFunction BoolFunction::from_code(std::size_t n, std::uint64_t code) {
    if (n > 5) throw ArgumentError("from_code supports arity <= 5");
    return from_predicate(n, [code](Mask x) { return (code >> x) & 1; });
}

BoolFunction pointwise(const BoolFunction& f, const BoolFunction& g) {
    if (f.arity() != g.arity()) throw ArgumentError("pointwise product needs equal arities");
    std::vector<std::int8_t> t(f.points());
    for (Mask x = 0; x < t.size(); ++x) t[x] = static_cast<std::int8_t>(f(x) * g(x));
    return BoolFunction(f.arity(), std::move(t));
}

RealPointFunction RealPointFunction::from(const BoolFunction& f) {
    return {f.arity(), std::vector<double>(f.table().begin(), f.table().end())};
}

FourierSpectrum wht(const RealPointFunction& f) {
    if (f.table.size() != (std::size_t{1} << f.n)) throw ArgumentError("point table length is not 2^n");
    FourierSpectrum s{f.n, f.table};
    butterfly(s.coeffs);
    const double scale = 1.0 / static_cast<double>(s.coeffs.size());
    for (auto& c : s.coeffs) c *= scale;
    return s;
}

FourierSpectrum wht(const BoolFunction& f) { return wht(RealPointFunction::from(f)); }

RealPointFunction iwht(const FourierSpectrum& s) {
    if (s.coeffs.size() != (std::size_t{1} << s.n)) throw ArgumentError("spectrum length is not 2^n");
    RealPointFunction f{s.n, s.coeffs};
    butterfly(f.table);
    return f;
}

std::vector<std::int64_t> integer_transform(const BoolFunction& f) {
    std::vector<std::int64_t> a(f.table().begin(), f.table().end());
    butterfly(a);
    return a;
}

std::size_t degree(const BoolFunction& f) {
    const auto a = integer_transform(f);
    std::size_t d = 0;
    for (Mask t = 0; t < a.size(); ++t)
        if (a[t] != 0) d = std::max<std::size_t>(d, static_cast<std::size_t>(__builtin_popcount(t)));
    return d;
}

double character_correlation(const RealPointFunction& u, Mask subset) {
    double s = 0.0;
    for (Mask x = 0; x < u.table.size(); ++x) s += u.table[x] * character_eval(subset, x);
    return s;
}

BoolFunction parse_truth_table(std::istream& in) {
    std::string header;
    if (!(in >> header) || header.rfind("n=", 0) != 0) throw ArgumentError("truth table must start with n=<arity>");
    std::size_t n = 0;
    try {
        n = std::stoul(header.substr(2));
    } catch (const std::exception&) {
        throw ArgumentError("bad arity in '" + header + "'");
    }
    check_arity(n);
    std::string bits, chunk;
    while (in >> chunk) bits += chunk;
    if (bits.size() != (std::size_t{1} << n)) {
        throw ArgumentError("truth table has " + std::to_string(bits.size()) + " symbols, expected " +
                            std::to_string(std::size_t{1} << n));
    }
    std::vector<std::int8_t> t(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] != '0' && bits[i] != '1') throw ArgumentError("truth table symbol must be 0 or 1");
        t[i] = bits[i] == '1' ? -1 : 1;
    }
    return BoolFunction(n, std::move(t));
}

std::string format_truth_table(const BoolFunction& f) {
    std::string out = "n=" + std::to_string(f.arity()) + "\n";
    for (auto v : f.table()) out += v < 0 ? '1' : '0';
    out += '\n';
    return out;
}

BoolFunction builtin_function(const std::string& spec) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos) throw ArgumentError("built-in function must be NAME:arity, got '" + spec + "'");
    std::string name = spec.substr(0, colon);
    std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) { return std::toupper(c); });
    std::size_t n = 0;
    try {
        std::size_t used = 0;
        n = std::stoul(spec.substr(colon + 1), &used);
        if (used != spec.size() - colon - 1) throw std::invalid_argument(spec);
    } catch (const std::exception&) {
        throw ArgumentError("bad arity in '" + spec + "'");
    }
    if (n == 0) throw ArgumentError("built-in functions need arity >= 1");
    if (name == "PARITY") return BoolFunction::parity(n);
    if (name == "AND") return BoolFunction::and_fn(n);
    if (name == "OR") return BoolFunction::or_fn(n);
    if (name == "MAJ") return BoolFunction::majority(n);
    throw ArgumentError("unknown built-in function '" + name + "' (PARITY, AND, OR, MAJ)");
}

BoolFunction load_function(const std::string& name_or_path) {
    std::ifstream in(name_or_path);
    if (in) return parse_truth_table(in);
    return builtin_function(name_or_path);
}

}  // namespace commbound
