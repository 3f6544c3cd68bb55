#include "pucci/field.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>

#include "pucci/errors.hpp"

namespace pucci {

Field::Field(std::shared_ptr<const GridMask> mask)
    : mask_(std::move(mask)),
      values_(mask_->node_count(), 0.0),
      closure_(mask_->crossing_count(), 0.0) {}

Field::Field(std::shared_ptr<const GridMask> mask, std::vector<double> values,
             std::vector<double> closure)
    : mask_(std::move(mask)), values_(std::move(values)), closure_(std::move(closure)) {
    check_complete();
}

Field Field::from_function(std::shared_ptr<const GridMask> mask,
                           const std::function<double(Point)>& fn) {
    Field f(mask);
    for (int i = 0; i < f.size(); ++i) f.values_[i] = fn(f.mask().coord(i));
    for (int c = 0; c < f.mask().crossing_count(); ++c)
        f.closure_[c] = fn(f.mask().crossing_point(c));
    return f;
}

double Field::max() const { return *std::max_element(values_.begin(), values_.end()); }
double Field::min() const { return *std::min_element(values_.begin(), values_.end()); }

double Field::sup_error(const std::function<double(Point)>& fn) const {
    double e = 0.0;
    for (int i = 0; i < size(); ++i)
        e = std::max(e, std::abs(values_[i] - fn(mask_->coord(i))));
    return e;
}

void Field::check_complete() const {
    if (int(values_.size()) != mask_->node_count() ||
        int(closure_.size()) != mask_->crossing_count())
        throw StructuralError("Field: values/closure do not match the mask");
    for (double v : closure_)
        if (!std::isfinite(v)) throw StructuralError("Field: non-finite closure value");
}

void Field::write_csv(const std::string& path) const {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw ConfigError("Field::write_csv: cannot open " + path);
    std::fprintf(f, "x,y,value\n");
    for (int i = 0; i < size(); ++i) {
        const Point p = mask_->coord(i);
        std::fprintf(f, "%.17g,%.17g,%.17g\n", p.x, p.y, values_[i]);
    }
    std::fclose(f);
}

namespace {

void put_u64(std::ofstream& os, uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = (v >> (8 * i)) & 0xff;
    os.write(reinterpret_cast<char*>(b), 8);
}

void put_f64(std::ofstream& os, double d) {
    uint64_t v;
    std::memcpy(&v, &d, 8);
    put_u64(os, v);
}

uint64_t get_u64(std::ifstream& is) {
    unsigned char b[8];
    is.read(reinterpret_cast<char*>(b), 8);
    uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
    return v;
}

double get_f64(std::ifstream& is) {
    const uint64_t v = get_u64(is);
    double d;
    std::memcpy(&d, &v, 8);
    return d;
}

} // namespace

void Field::write_binary(const std::string& path) const {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw ConfigError("Field::write_binary: cannot open " + path);
    const double ext = mask_->extent() * mask_->h();
    put_f64(os, mask_->h());
    put_f64(os, -ext);
    put_f64(os, -ext);
    put_f64(os, ext);
    put_f64(os, ext);
    put_u64(os, uint64_t(size()));
    for (int i = 0; i < size(); ++i) {
        put_u64(os, uint64_t(i));
        put_f64(os, values_[i]);
    }
}

Field::BinaryDump Field::read_binary(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw ConfigError("Field::read_binary: cannot open " + path);
    BinaryDump d;
    d.h = get_f64(is);
    for (double& b : d.bbox) b = get_f64(is);
    const uint64_t n = get_u64(is);
    d.entries.resize(n);
    for (uint64_t i = 0; i < n; ++i) {
        const uint64_t idx = get_u64(is);
        d.entries[i] = {idx, get_f64(is)};
    }
    if (!is) throw ConfigError("Field::read_binary: truncated dump " + path);
    return d;
}

} // namespace pucci
