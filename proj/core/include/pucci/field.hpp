#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "pucci/grid.hpp"

namespace pucci {

/// Scalar grid function on the interior nodes of a mask, together with the
/// Dirichlet closure: one value per stencil-arm boundary crossing. A field
/// with its mask always has a complete closed stencil by construction.
class Field {
public:
    explicit Field(std::shared_ptr<const GridMask> mask);
    Field(std::shared_ptr<const GridMask> mask, std::vector<double> values,
          std::vector<double> closure);

    /// Samples fn at the interior nodes and at every boundary crossing.
    static Field from_function(std::shared_ptr<const GridMask> mask,
                               const std::function<double(Point)>& fn);

    const GridMask& mask() const { return *mask_; }
    std::shared_ptr<const GridMask> mask_ptr() const { return mask_; }

    int size() const { return int(values_.size()); }
    double operator[](int node) const { return values_[node]; }
    double& operator[](int node) { return values_[node]; }
    const std::vector<double>& values() const { return values_; }
    std::vector<double>& values() { return values_; }

    double closure(int crossing) const { return closure_[crossing]; }
    double& closure(int crossing) { return closure_[crossing]; }
    const std::vector<double>& closure_values() const { return closure_; }

    double max() const;
    double min() const;

    /// Sup-norm distance to fn over the interior nodes.
    double sup_error(const std::function<double(Point)>& fn) const;

    /// Throws StructuralError unless the closure covers every crossing.
    void check_complete() const;

    /// CSV rows "x,y,value" (17 significant digits, deterministic order).
    void write_csv(const std::string& path) const;
    /// Compact dump: h, bbox (xmin ymin xmax ymax), node count, then
    /// (node index, value) pairs; all little-endian 64-bit.
    void write_binary(const std::string& path) const;
    struct BinaryDump {
        double h;
        double bbox[4];
        std::vector<std::pair<uint64_t, double>> entries;
    };
    static BinaryDump read_binary(const std::string& path);

private:
    std::shared_ptr<const GridMask> mask_;
    std::vector<double> values_;
    std::vector<double> closure_;
};

} // namespace pucci
