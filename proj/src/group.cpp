#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "json.hpp"

#include "commbound/composer.hpp"
#include "commbound/error.hpp"
#include "commbound/groupcomp.hpp"
#include "commbound/linalg.hpp"

namespace commbound::group {

namespace {

// exp(2 pi i k / m), exact at multiples of a quarter turn.
Complex root_of_unity(std::size_t k, std::size_t m) {
    k %= m;
    if ((4 * k) % m == 0) {
        switch ((4 * k) / m) {
            case 0: return {1.0, 0.0};
            case 1: return {0.0, 1.0};
            case 2: return {-1.0, 0.0};
            default: return {0.0, -1.0};
        }
    }
    return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(m));
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(trim(cur));
    return out;
}

std::size_t parse_count(const std::string& s, const char* what) {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(s, &pos);
    } catch (const std::exception&) {
        throw ArgumentError(std::string("expected a nonnegative integer for ") + what + ", got '" + s + "'");
    }
    if (pos != s.size() || s.empty() || s[0] == '-')
        throw ArgumentError(std::string("expected a nonnegative integer for ") + what + ", got '" + s + "'");
    return static_cast<std::size_t>(v);
}

}  // namespace

AbelianGroupSpec::AbelianGroupSpec(std::vector<std::size_t> moduli) : moduli_(std::move(moduli)) {
    if (moduli_.empty()) throw ArgumentError("group needs at least one component");
    for (std::size_t m : moduli_) {
        if (m < 2) throw ArgumentError("every modulus must be at least 2");
        if (order_ > kMaxGroupOrder / m) throw ArgumentError("group order exceeds 2^14");
        order_ *= m;
    }
}

std::vector<std::size_t> AbelianGroupSpec::decode(Element e) const {
    std::vector<std::size_t> t(moduli_.size());
    for (std::size_t j = 0; j < moduli_.size(); ++j) {
        t[j] = e % moduli_[j];
        e /= moduli_[j];
    }
    return t;
}

Element AbelianGroupSpec::encode(const std::vector<std::size_t>& tuple) const {
    if (tuple.size() != moduli_.size()) throw ArgumentError("element tuple has the wrong number of components");
    Element e = 0;
    for (std::size_t j = moduli_.size(); j-- > 0;) {
        if (tuple[j] >= moduli_[j]) throw ArgumentError("element component out of range");
        e = e * moduli_[j] + tuple[j];
    }
    return e;
}

Element AbelianGroupSpec::add(Element a, Element b) const {
    Element out = 0, scale = 1;
    for (std::size_t m : moduli_) {
        out += ((a % m + b % m) % m) * scale;
        a /= m;
        b /= m;
        scale *= m;
    }
    return out;
}

Element AbelianGroupSpec::negate(Element a) const {
    Element out = 0, scale = 1;
    for (std::size_t m : moduli_) {
        out += ((m - a % m) % m) * scale;
        a /= m;
        scale *= m;
    }
    return out;
}

std::string AbelianGroupSpec::format(Element e) const {
    std::string s;
    for (std::size_t v : decode(e)) {
        if (!s.empty()) s += ':';
        s += std::to_string(v);
    }
    return s;
}

Element AbelianGroupSpec::parse(const std::string& text) const {
    const auto parts = split(text, ':');
    std::vector<std::size_t> tuple;
    for (const auto& p : parts) tuple.push_back(parse_count(p, "element component"));
    return encode(tuple);
}

std::vector<std::size_t> CharacterTable::class_sizes() const {
    std::vector<std::size_t> sizes(h, 0);
    for (std::size_t c : class_of) {
        if (c >= h) throw ArgumentError("class index out of range");
        ++sizes[c];
    }
    return sizes;
}

std::size_t CharacterTable::identity() const {
    for (std::size_t i = 0; i < h; ++i) {
        bool trivial = true;
        for (Element g = 0; g < order && trivial; ++g) trivial = std::abs(table(i, g) - Complex(1.0, 0.0)) <= 1e-9;
        if (trivial) return i;
    }
    throw ArgumentError("character table has no trivial character");
}

double CharacterTable::orthogonality_error() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < h; ++i) {
        for (std::size_t j = i; j < h; ++j) {
            Complex s = 0.0;
            for (Element g = 0; g < order; ++g) s += table(i, g) * std::conj(table(j, g));
            if (i == j) s -= static_cast<double>(order);
            worst = std::max(worst, std::abs(s));
        }
    }
    return worst;
}

void CharacterTable::validate() const {
    if (h == 0 || order == 0) throw ArgumentError("character table is empty");
    if (table.rows() != h || table.cols() != order) throw ArgumentError("character table must be h x order");
    if (degrees.size() != h) throw ArgumentError("character table needs one degree per character");
    if (!class_of.empty()) {
        if (class_of.size() != order) throw ArgumentError("class_of needs one entry per element");
        for (std::size_t s : class_sizes())
            if (s == 0) throw ArgumentError("every class must be nonempty");
    }
    for (std::size_t i = 0; i < h; ++i)
        for (Element g = 0; g < order; ++g)
            if (std::abs(table(i, g)) > static_cast<double>(degrees[i]) + 1e-12)
                throw ArgumentError("character value exceeds its degree");
    const double err = orthogonality_error();
    if (err > 1e-9) throw ArgumentError("character rows are not orthogonal (error " + std::to_string(err) + ")");
}

CharacterTable characters_abelian(const AbelianGroupSpec& g) {
    CharacterTable t;
    t.h = t.order = g.order();
    t.table = ComplexMatrix(t.h, t.order);
    std::vector<std::vector<std::size_t>> tuples(g.order());
    for (Element e = 0; e < g.order(); ++e) tuples[e] = g.decode(e);
    for (std::size_t a = 0; a < t.h; ++a) {
        for (Element x = 0; x < t.order; ++x) {
            Complex v = 1.0;
            for (std::size_t j = 0; j < g.moduli().size(); ++j) {
                const std::size_t m = g.moduli()[j];
                v *= root_of_unity((tuples[a][j] * tuples[x][j]) % m, m);
            }
            t.table(a, x) = v;
        }
    }
    t.class_of.resize(t.order);
    for (Element e = 0; e < t.order; ++e) t.class_of[e] = e;
    t.degrees.assign(t.h, 1);
    t.validate();
    return t;
}

CharacterTable product_table(const std::vector<CharacterTable>& components) {
    if (components.empty()) throw ArgumentError("product of zero groups");
    CharacterTable t;
    t.h = 1;
    t.order = 1;
    bool classes = true;
    for (const auto& c : components) {
        if (t.order > kMaxGroupOrder / c.order) throw ArgumentError("product group order exceeds 2^14");
        t.h *= c.h;
        t.order *= c.order;
        classes = classes && !c.class_of.empty();
    }
    t.table = ComplexMatrix(t.h, t.order);
    t.degrees.assign(t.h, 1);
    if (classes) t.class_of.assign(t.order, 0);
    for (std::size_t i = 0; i < t.h; ++i) {
        for (Element g = 0; g < t.order; ++g) {
            Complex v = 1.0;
            std::size_t ii = i, gg = g;
            for (const auto& c : components) {
                v *= c.table(ii % c.h, gg % c.order);
                ii /= c.h;
                gg /= c.order;
            }
            t.table(i, g) = v;
        }
        std::size_t ii = i;
        for (const auto& c : components) {
            t.degrees[i] *= c.degrees[ii % c.h];
            ii /= c.h;
        }
    }
    if (classes) {
        for (Element g = 0; g < t.order; ++g) {
            std::size_t gg = g, cls = 0, scale = 1;
            for (const auto& c : components) {
                cls += c.class_of[gg % c.order] * scale;
                gg /= c.order;
                scale *= c.h;
            }
            t.class_of[g] = cls;
        }
    }
    return t;
}

GroupMapMatrix::GroupMapMatrix(AbelianGroupSpec g, std::size_t r, std::size_t c, std::vector<Element> e)
    : GroupMapMatrix(g.order(), r, c, std::move(e)) {
    abelian = std::move(g);
}

GroupMapMatrix::GroupMapMatrix(std::size_t ord, std::size_t r, std::size_t c, std::vector<Element> e)
    : order(ord), rows(r), cols(c), entries(std::move(e)) {
    if (rows == 0 || cols == 0) throw ArgumentError("group map must be nonempty");
    if (entries.size() != rows * cols) throw ArgumentError("group map entry count does not match dimensions");
    for (Element v : entries)
        if (v >= order) throw ArgumentError("group map entry is not a group element");
}

GroupMapMatrix GroupMapMatrix::from_sign(const SignMatrix& m) {
    std::vector<Element> e(m.size());
    for (std::size_t k = 0; k < e.size(); ++k) e[k] = m.entries()[k] < 0 ? 1 : 0;
    return GroupMapMatrix(AbelianGroupSpec({2}), m.rows(), m.cols(), std::move(e));
}

GroupMapMatrix GroupMapMatrix::block(const std::vector<GroupMapMatrix>& blocks) {
    if (blocks.empty()) throw ArgumentError("block map needs at least one block");
    std::vector<std::size_t> moduli;
    std::size_t rows = 1, cols = 1, entries = 1;
    for (const auto& b : blocks) {
        if (!b.abelian) throw ArgumentError("block maps need Abelian blocks");
        moduli.insert(moduli.end(), b.abelian->moduli().begin(), b.abelian->moduli().end());
        if (entries > kDefaultEntryCap / (b.rows * b.cols))
            throw ResourceError("block map exceeds the entry cap of " + std::to_string(kDefaultEntryCap));
        entries *= b.rows * b.cols;
        rows *= b.rows;
        cols *= b.cols;
    }
    AbelianGroupSpec spec(moduli);
    std::vector<Element> e(rows * cols);
    const std::size_t t = blocks.size();
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            // Peel the last block (least significant) first.
            std::vector<Element> parts(t);
            std::size_t rr = r, cc = c;
            for (std::size_t k = t; k-- > 0;) {
                parts[k] = blocks[k](rr % blocks[k].rows, cc % blocks[k].cols);
                rr /= blocks[k].rows;
                cc /= blocks[k].cols;
            }
            Element v = 0;
            for (std::size_t k = t; k-- > 0;) v = v * blocks[k].order + parts[k];
            e[r * cols + c] = v;
        }
    }
    return GroupMapMatrix(std::move(spec), rows, cols, std::move(e));
}

GroupMapMatrix parse_group_map(std::istream& in) {
    std::string line;
    std::optional<AbelianGroupSpec> spec;
    std::vector<std::vector<Element>> rows;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        if (!spec) {
            if (line.rfind("group", 0) != 0) throw ArgumentError("group map must start with 'group m1,m2,...'");
            std::vector<std::size_t> moduli;
            for (const auto& m : split(trim(line.substr(5)), ',')) moduli.push_back(parse_count(m, "modulus"));
            spec.emplace(moduli);
            continue;
        }
        std::vector<Element> row;
        for (const auto& tok : split(line, ',')) row.push_back(spec->parse(tok));
        if (!rows.empty() && row.size() != rows.front().size())
            throw ArgumentError("group map rows have different lengths");
        rows.push_back(std::move(row));
    }
    if (!spec) throw ArgumentError("group map is missing its 'group' header");
    if (rows.empty()) throw ArgumentError("group map has no rows");
    std::vector<Element> flat;
    for (const auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
    return GroupMapMatrix(*spec, rows.size(), rows.front().size(), std::move(flat));
}

GroupMapMatrix read_group_map(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ArgumentError("cannot open group map file: " + path);
    return parse_group_map(in);
}

void write_group_map(std::ostream& out, const GroupMapMatrix& m) {
    if (!m.abelian) throw ArgumentError("only Abelian group maps have a text form");
    out << "group ";
    for (std::size_t j = 0; j < m.abelian->moduli().size(); ++j) out << (j ? "," : "") << m.abelian->moduli()[j];
    out << '\n';
    for (std::size_t x = 0; x < m.rows; ++x) {
        for (std::size_t y = 0; y < m.cols; ++y) out << (y ? "," : "") << m.abelian->format(m(x, y));
        out << '\n';
    }
}

CharacterTable parse_character_table(std::istream& in) {
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ArgumentError(std::string("character table is not valid JSON: ") + e.what());
    }
    CharacterTable t;
    try {
        t.h = j.at("h").get<std::size_t>();
        t.order = j.at("order").get<std::size_t>();
        if (t.order > kMaxGroupOrder) throw ArgumentError("group order exceeds 2^14");
        t.table = ComplexMatrix(t.h, t.order);
        // Either a flat row-major list or one array per character; entries are
        // reals or [re, im] pairs.
        const auto& raw = j.at("table");
        std::vector<nlohmann::json> values;
        if (raw.size() == t.h * t.order) {
            values.assign(raw.begin(), raw.end());
        } else if (raw.size() == t.h) {
            for (const auto& row : raw) {
                if (!row.is_array() || row.size() != t.order) throw ArgumentError("character rows need order entries");
                values.insert(values.end(), row.begin(), row.end());
            }
        }
        if (values.size() != t.h * t.order) throw ArgumentError("character table needs h * order values");
        for (std::size_t k = 0; k < values.size(); ++k) {
            const auto& v = values[k];
            if (v.is_number()) {
                t.table.data()[k] = {v.get<double>(), 0.0};
            } else {
                if (!v.is_array() || v.size() != 2) throw ArgumentError("complex entries are [re, im] pairs");
                t.table.data()[k] = {v[0].get<double>(), v[1].get<double>()};
            }
        }
        if (j.contains("class_of")) t.class_of = j.at("class_of").get<std::vector<std::size_t>>();
        t.degrees = j.contains("degrees") ? j.at("degrees").get<std::vector<std::size_t>>()
                                          : std::vector<std::size_t>(t.h, 1);
    } catch (const nlohmann::json::exception& e) {
        throw ArgumentError(std::string("malformed character table: ") + e.what());
    }
    t.validate();
    return t;
}

CharacterTable read_character_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ArgumentError("cannot open character table file: " + path);
    return parse_character_table(in);
}

std::size_t PairMultiset::total() const {
    std::size_t n = 0;
    for (const auto& [k, c] : counts) n += c;
    return n;
}

bool g_invariant(const PairMultiset& t, const AbelianGroupSpec& g) {
    // Translation by (r, r) is a bijection, so matching every source count
    // against its image is enough.
    for (Element r = 1; r < g.order(); ++r) {
        for (const auto& [st, c] : t.counts) {
            const auto it = t.counts.find({g.add(r, st.first), g.add(r, st.second)});
            if (it == t.counts.end() || it->second != c) return false;
        }
    }
    return true;
}

double orthogonality_sums(const PairMultiset& t, const CharacterTable& table) {
    const std::size_t h = table.h;
    std::vector<Complex> m(h * h, 0.0);
    for (const auto& [st, c] : t.counts) {
        for (std::size_t i = 0; i < h; ++i) {
            const Complex a = static_cast<double>(c) * table(i, st.first);
            for (std::size_t j = 0; j < h; ++j) m[i * h + j] += a * std::conj(table(j, st.second));
        }
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < h; ++i)
        for (std::size_t j = 0; j < h; ++j)
            if (i != j) worst = std::max(worst, std::abs(m[i * h + j]));
    return worst;
}

PairMultisets pair_multisets(const GroupMapMatrix& gmap) {
    PairMultisets p;
    p.rows = gmap.rows;
    p.cols = gmap.cols;
    p.row_pairs.resize(gmap.rows * gmap.rows);
    p.col_pairs.resize(gmap.cols * gmap.cols);
    for (std::size_t x = 0; x < gmap.rows; ++x)
        for (std::size_t xp = 0; xp < gmap.rows; ++xp)
            for (std::size_t y = 0; y < gmap.cols; ++y) p.row_pairs[x * gmap.rows + xp].add(gmap(x, y), gmap(xp, y));
    for (std::size_t y = 0; y < gmap.cols; ++y)
        for (std::size_t yp = 0; yp < gmap.cols; ++yp)
            for (std::size_t x = 0; x < gmap.rows; ++x) p.col_pairs[y * gmap.cols + yp].add(gmap(x, y), gmap(x, yp));
    return p;
}

RegularityReport regularity_check(const GroupMapMatrix& gmap) {
    RegularityReport rep;
    rep.counts.assign(gmap.order, 0);
    for (Element e : gmap.entries) ++rep.counts[e];
    const std::size_t total = gmap.rows * gmap.cols;
    if (total % gmap.order != 0) {
        rep.reason = "|X||Y| = " + std::to_string(total) + " is not divisible by |G| = " + std::to_string(gmap.order);
    } else {
        rep.regular = std::all_of(rep.counts.begin(), rep.counts.end(),
                                  [&](std::size_t c) { return c == total / gmap.order; });
        if (!rep.regular) rep.reason = "elements do not occur equally often";
    }
    if (gmap.abelian) {
        bool rows_inv = true, cols_inv = true;
        for (std::size_t x = 0; x < gmap.rows && rows_inv; ++x) {
            PairMultiset s;
            for (std::size_t y = 0; y < gmap.cols; ++y) s.add(gmap(x, y), gmap(x, y));
            rows_inv = g_invariant(s, *gmap.abelian);
        }
        for (std::size_t y = 0; y < gmap.cols && cols_inv; ++y) {
            PairMultiset t;
            for (std::size_t x = 0; x < gmap.rows; ++x) t.add(gmap(x, y), gmap(x, y));
            cols_inv = g_invariant(t, *gmap.abelian);
        }
        rep.rows_diagonal_invariant = rows_inv;
        rep.cols_diagonal_invariant = cols_inv;
        rep.premise_consistent = !((rows_inv || cols_inv) && !rep.regular);
    }
    return rep;
}

OrthogonalityGeneralReport orthogonality_general(const GroupMapMatrix& gmap, const CharacterTable& table,
                                                 const std::vector<std::size_t>& hard) {
    if (gmap.order != table.order) throw ArgumentError("group map and character table orders differ");
    for (std::size_t i : hard)
        if (i >= table.h) throw ArgumentError("hard character index out of range");
    const std::size_t k = hard.size();
    const std::size_t X = gmap.rows, Y = gmap.cols;
    // v[a][x][y] = psi_{hard[a]}(g(x, y))
    std::vector<Complex> v(k * X * Y);
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t x = 0; x < X; ++x)
            for (std::size_t y = 0; y < Y; ++y) v[(a * X + x) * Y + y] = table(hard[a], gmap(x, y));
    auto at = [&](std::size_t a, std::size_t x, std::size_t y) { return v[(a * X + x) * Y + y]; };

    OrthogonalityGeneralReport rep;
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = 0; b < k; ++b) {
            if (a == b) continue;
            for (std::size_t x = 0; x < X; ++x) {
                for (std::size_t xp = 0; xp < X; ++xp) {
                    Complex s = 0.0;
                    for (std::size_t y = 0; y < Y; ++y) s += at(a, x, y) * std::conj(at(b, xp, y));
                    rep.max_row_sum = std::max(rep.max_row_sum, std::abs(s));
                }
            }
            for (std::size_t y = 0; y < Y; ++y) {
                for (std::size_t yp = 0; yp < Y; ++yp) {
                    Complex s = 0.0;
                    for (std::size_t x = 0; x < X; ++x) s += at(a, x, y) * std::conj(at(b, x, yp));
                    rep.max_col_sum = std::max(rep.max_col_sum, std::abs(s));
                }
            }
        }
    }
    rep.rows_pass = rep.max_row_sum <= 1e-8 * static_cast<double>(Y);
    rep.cols_pass = rep.max_col_sum <= 1e-8 * static_cast<double>(X);
    return rep;
}

TPrimeReport tprime_check(const PairMultiset& t, const CharacterTable& table) {
    if (table.class_of.size() != table.order) throw ArgumentError("tprime_check needs class data for every element");
    const std::size_t G = table.order, h = table.h;
    const auto sizes = table.class_sizes();
    std::vector<double> block(h * h, 0.0);
    for (const auto& [st, c] : t.counts) {
        if (st.first >= G || st.second >= G) throw ArgumentError("multiset element outside the group");
        block[table.class_of[st.first] * h + table.class_of[st.second]] += static_cast<double>(c);
    }
    TPrimeReport rep;
    rep.tprime = RealMatrix(G, G);
    for (Element s = 0; s < G; ++s) {
        for (Element u = 0; u < G; ++u) {
            const std::size_t k = table.class_of[s], l = table.class_of[u];
            rep.tprime(s, u) = block[k * h + l] / static_cast<double>(sizes[k] * sizes[l]);
        }
    }
    const double threshold = 1e-8 * std::max<double>(1.0, static_cast<double>(t.total()));
    rep.statement1_max = orthogonality_sums(t, table);
    rep.statement1 = rep.statement1_max <= threshold;

    // K = C T' C^dagger; T' = C^dagger D C forces K = |G|^2 D.
    std::vector<Complex> ct(h * G, 0.0);  // C T'
    for (std::size_t i = 0; i < h; ++i)
        for (Element s = 0; s < G; ++s)
            for (Element u = 0; u < G; ++u) ct[i * G + u] += table(i, s) * rep.tprime(s, u);
    std::vector<Complex> k(h * h, 0.0);
    for (std::size_t i = 0; i < h; ++i)
        for (std::size_t j = 0; j < h; ++j)
            for (Element u = 0; u < G; ++u) k[i * h + j] += ct[i * G + u] * std::conj(table(j, u));
    const double g2 = static_cast<double>(G) * static_cast<double>(G);
    for (std::size_t i = 0; i < h; ++i)
        for (std::size_t j = 0; j < h; ++j)
            if (i != j) rep.statement3_offdiag = std::max(rep.statement3_offdiag, std::abs(k[i * h + j]) / g2);
    double residual = 0.0;
    for (Element s = 0; s < G; ++s) {
        for (Element u = 0; u < G; ++u) {
            Complex r = 0.0;
            for (std::size_t i = 0; i < h; ++i) r += std::conj(table(i, s)) * (k[i * h + i] / g2) * table(i, u);
            residual += std::norm(rep.tprime(s, u) - r);
        }
    }
    rep.statement3_residual = std::sqrt(residual);
    rep.statement3 = static_cast<double>(G) * rep.statement3_residual <= threshold;
    return rep;
}

DegenerationReport degeneration_check(const std::vector<SignMatrix>& blocks) {
    DegenerationReport rep;
    std::vector<GroupMapMatrix> maps;
    rep.all_balanced = true;
    for (const auto& b : blocks) {
        maps.push_back(GroupMapMatrix::from_sign(b));
        rep.all_balanced = rep.all_balanced && balance_check(b).strongly_balanced;
    }
    const GroupMapMatrix whole = GroupMapMatrix::block(maps);
    const PairMultisets p = pair_multisets(whole);
    rep.all_invariant = true;
    for (const auto& s : p.row_pairs) rep.all_invariant = rep.all_invariant && g_invariant(s, *whole.abelian);
    for (const auto& t : p.col_pairs) rep.all_invariant = rep.all_invariant && g_invariant(t, *whole.abelian);
    return rep;
}

std::vector<InvarianceCounterexample> invariance_search(std::size_t modulus, std::size_t rows, std::size_t cols,
                                                        std::size_t trials, std::uint64_t seed,
                                                        std::size_t max_results) {
    if (modulus < 2 || rows % modulus != 0 || cols % modulus != 0)
        throw ArgumentError("rows and columns must be positive multiples of the modulus");
    const AbelianGroupSpec spec({modulus});
    std::mt19937_64 rng(seed);
    std::vector<InvarianceCounterexample> found;
    for (std::size_t trial = 0; trial < trials && found.size() < max_results; ++trial) {
        std::vector<Element> e(rows * cols);
        for (std::size_t x = 0; x < rows; ++x)
            for (std::size_t y = 0; y < cols; ++y) e[x * cols + y] = (x + y) % modulus;
        // Interchange moves keep every row and column count fixed.
        std::uniform_int_distribution<std::size_t> pick_r(0, rows - 1), pick_c(0, cols - 1);
        for (std::size_t step = 0; step < 20 * rows * cols; ++step) {
            const std::size_t r1 = pick_r(rng), r2 = pick_r(rng), c1 = pick_c(rng), c2 = pick_c(rng);
            Element& a = e[r1 * cols + c1];
            Element& b = e[r1 * cols + c2];
            Element& c = e[r2 * cols + c1];
            Element& d = e[r2 * cols + c2];
            if (a == d && b == c && a != b) {
                std::swap(a, b);
                std::swap(c, d);
            }
        }
        GroupMapMatrix g(spec, rows, cols, std::move(e));
        const PairMultisets p = pair_multisets(g);
        bool done = false;
        for (std::size_t x = 0; x < rows && !done; ++x)
            for (std::size_t xp = 0; xp < rows && !done; ++xp)
                if (!g_invariant(p.s(x, xp), spec)) {
                    found.push_back({g, x, xp, 0, 0, true});
                    done = true;
                }
        for (std::size_t y = 0; y < cols && !done; ++y)
            for (std::size_t yp = 0; yp < cols && !done; ++yp)
                if (!g_invariant(p.t(y, yp), spec)) {
                    found.push_back({g, 0, 0, y, yp, false});
                    done = true;
                }
    }
    return found;
}

}  // namespace commbound::group
