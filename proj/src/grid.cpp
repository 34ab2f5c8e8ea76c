#include "sparsekit/grid.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <functional>
#include <istream>
#include <ostream>

namespace sparsekit {

double pairwise_sum(std::span<const double> xs) {
    if (xs.size() <= 8) {
        double s = 0.0;
        for (double x : xs) s += x;
        return s;
    }
    std::size_t h = xs.size() / 2;
    return pairwise_sum(xs.subspan(0, h)) + pairwise_sum(xs.subspan(h));
}

GridFunction GridFunction::zeros(int n, int J, bool nonneg) {
    GridFunction f;
    f.n = n;
    f.J = J;
    f.nonneg = nonneg;
    f.values.assign(std::size_t{1} << (n * J), 0.0);
    return f;
}

GridFunction GridFunction::constant(int n, int J, double c) {
    GridFunction f = zeros(n, J, c >= 0.0);
    std::fill(f.values.begin(), f.values.end(), c);
    return f;
}

double GridFunction::cell_measure() const { return std::ldexp(1.0, -n * J); }

void GridFunction::validate() const {
    if (n < 1 || n > 3) throw ParameterError("dimension n must be 1, 2 or 3");
    if (J < 0 || n * J > 30) throw ParameterError("depth J out of range");
    if (values.size() != (std::size_t{1} << (n * J)))
        throw ParameterError("value count does not match 2^(nJ)");
    for (double v : values) {
        if (!std::isfinite(v)) throw ParameterError("non-finite grid value");
        if (nonneg && v < 0.0) throw ParameterError("negative value in a nonneg grid");
    }
}

std::size_t cubes_at_level(int n, int k) { return std::size_t{1} << (n * k); }

double cube_measure(int n, int k) { return std::ldexp(1.0, -n * k); }

std::size_t cube_linear_index(int n, const DyadicCube& q) {
    std::size_t idx = 0;
    for (int i = 0; i < n; ++i) idx = (idx << q.level) | static_cast<std::size_t>(q.m[i]);
    return idx;
}

DyadicCube cube_from_linear(int n, int k, std::size_t idx) {
    DyadicCube q;
    q.level = k;
    std::size_t mask = (std::size_t{1} << k) - 1;
    for (int i = n - 1; i >= 0; --i) {
        q.m[i] = static_cast<std::int64_t>(idx & mask);
        idx >>= k;
    }
    return q;
}

DyadicCube parent_of(const DyadicCube& q) {
    DyadicCube p = q;
    p.level = q.level - 1;
    for (auto& c : p.m) c >>= 1;
    return p;
}

bool cube_contains(const DyadicCube& outer, const DyadicCube& inner) {
    if (inner.level < outer.level) return false;
    int s = inner.level - outer.level;
    for (int i = 0; i < 3; ++i)
        if ((inner.m[i] >> s) != outer.m[i]) return false;
    return true;
}

std::size_t child_linear_index(int n, int k, std::size_t idx, unsigned c) {
    // Decompose idx into coordinates at level k, double, add the child bits.
    std::size_t mask = (std::size_t{1} << k) - 1;
    std::size_t out = 0;
    for (int i = 0; i < n; ++i) {
        int shift = k * (n - 1 - i);
        std::size_t mi = (idx >> shift) & mask;
        std::size_t bit = (c >> (n - 1 - i)) & 1u;
        out = (out << (k + 1)) | (2 * mi + bit);
    }
    return out;
}

std::size_t ancestor_of_cell(int n, int J, std::size_t cell, int k) {
    std::size_t mask = (std::size_t{1} << J) - 1;
    std::size_t out = 0;
    for (int i = 0; i < n; ++i) {
        int shift = J * (n - 1 - i);
        std::size_t mi = (cell >> shift) & mask;
        out = (out << k) | (mi >> (J - k));
    }
    return out;
}

std::vector<std::size_t> cells_of_cube(int n, int J, const DyadicCube& q) {
    int s = J - q.level;
    std::size_t w = std::size_t{1} << s;
    std::size_t count = std::size_t{1} << (n * s);
    std::vector<std::size_t> out;
    out.reserve(count);
    for (std::size_t t = 0; t < count; ++t) {
        std::size_t idx = 0;
        for (int i = 0; i < n; ++i) {
            std::size_t off = (t >> (s * (n - 1 - i))) & (w - 1);
            std::size_t coord = static_cast<std::size_t>(q.m[i]) * w + off;
            idx = (idx << J) | coord;
        }
        out.push_back(idx);
    }
    return out;
}

double IntegralTable::abs_integral(const DyadicCube& q) const {
    return abs_levels.at(q.level).at(cube_linear_index(n, q));
}

double IntegralTable::signed_integral(const DyadicCube& q) const {
    return signed_levels.at(q.level).at(cube_linear_index(n, q));
}

IntegralTable build_table(const GridFunction& f) {
    f.validate();
    IntegralTable t;
    t.n = f.n;
    t.J = f.J;
    t.abs_levels.resize(f.J + 1);
    t.signed_levels.resize(f.J + 1);
    const double h = f.cell_measure();
    auto& aJ = t.abs_levels[f.J];
    auto& sJ = t.signed_levels[f.J];
    aJ.resize(f.size());
    sJ.resize(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        aJ[i] = std::abs(f.values[i]) * h;
        sJ[i] = f.values[i] * h;
    }
    const unsigned nc = 1u << f.n;
    std::array<double, 8> ca{}, cs{};
    for (int k = f.J - 1; k >= 0; --k) {
        std::size_t cnt = cubes_at_level(f.n, k);
        auto& ak = t.abs_levels[k];
        auto& sk = t.signed_levels[k];
        ak.resize(cnt);
        sk.resize(cnt);
        for (std::size_t q = 0; q < cnt; ++q) {
            for (unsigned c = 0; c < nc; ++c) {
                std::size_t ch = child_linear_index(f.n, k, q, c);
                ca[c] = t.abs_levels[k + 1][ch];
                cs[c] = t.signed_levels[k + 1][ch];
            }
            ak[q] = pairwise_sum({ca.data(), nc});
            sk[q] = pairwise_sum({cs.data(), nc});
        }
    }
    return t;
}

double cube_average(const GridFunction& f, const IntegralTable& t, const DyadicCube& q) {
    return t.signed_integral(q) / cube_measure(f.n, q.level);
}

double oscillation_integral(const GridFunction& f, const IntegralTable& t, const DyadicCube& q) {
    double avg = cube_average(f, t, q);
    auto cells = cells_of_cube(f.n, f.J, q);
    std::vector<double> d(cells.size());
    const double h = f.cell_measure();
    for (std::size_t i = 0; i < cells.size(); ++i) d[i] = std::abs(f.values[cells[i]] - avg) * h;
    return pairwise_sum(d);
}

std::vector<std::vector<double>> oscillation_levels(const GridFunction& f, const IntegralTable& t) {
    std::vector<std::vector<double>> out(f.J + 1);
    for (int k = 0; k <= f.J; ++k) {
        std::size_t cnt = cubes_at_level(f.n, k);
        out[k].resize(cnt);
        for (std::size_t q = 0; q < cnt; ++q)
            out[k][q] = oscillation_integral(f, t, cube_from_linear(f.n, k, q));
    }
    return out;
}

Rearrangement rearrangement(const GridFunction& f) {
    f.validate();
    Rearrangement r;
    r.dt = f.cell_measure();
    r.fstar.resize(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) r.fstar[i] = std::abs(f.values[i]);
    std::sort(r.fstar.begin(), r.fstar.end(), std::greater<double>());
    r.fstarstar.resize(f.size());
    // Running mass is an exact multiple of dt times a prefix sum of values.
    double run = 0.0;
    for (std::size_t i = 0; i < r.fstar.size(); ++i) {
        run += r.fstar[i];
        r.fstarstar[i] = run / static_cast<double>(i + 1);
    }
    return r;
}

double discrete_gradient_l2(const GridFunction& f) {
    f.validate();
    if (f.n != 1 && f.n != 2) throw ParameterError("discrete_gradient_l2 requires n in {1,2}");
    const std::size_t s = f.side();
    const double scale = std::ldexp(1.0, f.J);
    std::vector<double> sq(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        double acc = 0.0;
        if (f.n == 1) {
            double d = (f.values[(i + 1) % s] - f.values[i]) * scale;
            acc = d * d;
        } else {
            std::size_t r = i / s, c = i % s;
            double dx = (f.values[((r + 1) % s) * s + c] - f.values[i]) * scale;
            double dy = (f.values[r * s + (c + 1) % s] - f.values[i]) * scale;
            acc = dx * dx + dy * dy;
        }
        sq[i] = acc * f.cell_measure();
    }
    return std::sqrt(pairwise_sum(sq));
}

namespace {

void put_le(std::ostream& os, std::uint64_t v, int bytes) {
    char buf[8];
    for (int i = 0; i < bytes; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    os.write(buf, bytes);
}

std::uint64_t get_le(std::istream& is, int bytes) {
    unsigned char buf[8];
    is.read(reinterpret_cast<char*>(buf), bytes);
    if (is.gcount() != bytes) throw ParameterError("SPGF: truncated input");
    std::uint64_t v = 0;
    for (int i = bytes - 1; i >= 0; --i) v = (v << 8) | buf[i];
    return v;
}

}  // namespace

void write_spgf(std::ostream& os, const GridFunction& f) {
    f.validate();
    os.write("SPGF", 4);
    put_le(os, 1, 4);
    put_le(os, static_cast<std::uint64_t>(f.n), 1);
    put_le(os, static_cast<std::uint64_t>(f.J), 1);
    put_le(os, f.nonneg ? 1 : 0, 2);
    for (double v : f.values) put_le(os, std::bit_cast<std::uint64_t>(v), 8);
}

GridFunction read_spgf(std::istream& is) {
    char magic[4];
    is.read(magic, 4);
    if (is.gcount() != 4 || std::memcmp(magic, "SPGF", 4) != 0) throw ParameterError("SPGF: bad magic");
    if (get_le(is, 4) != 1) throw ParameterError("SPGF: unsupported version");
    GridFunction f;
    f.n = static_cast<int>(get_le(is, 1));
    f.J = static_cast<int>(get_le(is, 1));
    f.nonneg = (get_le(is, 2) & 1u) != 0;
    if (f.n < 1 || f.n > 3 || f.n * f.J > 30) throw ParameterError("SPGF: bad header");
    std::size_t count = std::size_t{1} << (f.n * f.J);
    f.values.resize(count);
    for (std::size_t i = 0; i < count; ++i) f.values[i] = std::bit_cast<double>(get_le(is, 8));
    if (is.peek() != std::char_traits<char>::eof()) throw ParameterError("SPGF: trailing data");
    f.validate();
    return f;
}

void save_spgf(const std::string& path, const GridFunction& f) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw ParameterError("cannot open " + path);
    write_spgf(os, f);
}

GridFunction load_spgf(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw ParameterError("cannot open " + path);
    return read_spgf(is);
}

}  // namespace sparsekit
