#include "cuphom/cup_complex.hpp"

#include <sstream>

#include "cuphom/exterior.hpp"

namespace cuphom {

namespace {

std::size_t basis_size(int b, int k)
{
    if (k < 0 || k > b)
        return 0;
    std::size_t r = 1;
    for (int i = 1; i <= k; ++i)
        r = r * static_cast<std::size_t>(b - k + i) / static_cast<std::size_t>(i);
    return r;
}

}  // namespace

BoundaryMatrix boundary_matrix(const ThreeForm& f, int k)
{
    const int b = f.rank();
    BoundaryMatrix out;
    out.source_degree = k;
    out.target_degree = k - 3;
    out.matrix = IntegerMatrix(basis_size(b, k - 3), basis_size(b, k));
    if (k < 3 || k > b || f.is_zero())
        return out;

    const auto columns = blade_basis(b, k);
    for (std::size_t c = 0; c < columns.size(); ++c) {
        const Chain image = contract(f, columns[c]);
        for (const auto& [blade, coeff] : image.terms())
            out.matrix(blade_index(b, blade), c) = coeff;
    }
    return out;
}

std::array<Mod3Complex, 3> build_mod3_complexes(const ThreeForm& f)
{
    std::array<Mod3Complex, 3> out;
    for (int j = 0; j < 3; ++j) {
        Mod3Complex& cx = out[j];
        cx.residue = j;
        for (int k = j; k <= f.rank(); k += 3) {
            cx.degrees.push_back(k);
            if (k >= 3)
                cx.boundaries.push_back(boundary_matrix(f, k));
        }
    }
    return out;
}

DSquaredReport verify_d_squared(const ThreeForm& f)
{
    DSquaredReport report;
    for (int k = 6; k <= f.rank(); ++k) {
        const IntegerMatrix product = boundary_matrix(f, k - 3).matrix * boundary_matrix(f, k).matrix;
        for (std::size_t r = 0; r < product.rows(); ++r)
            for (std::size_t c = 0; c < product.cols(); ++c)
                if (product(r, c) != 0)
                    report.violations.push_back({k, r, c});
    }
    return report;
}

std::string dump_boundaries(const ThreeForm& f)
{
    std::ostringstream os;
    for (int k = 3; k <= f.rank(); ++k) {
        const auto d = boundary_matrix(f, k);
        os << "# d_" << k << ": " << d.matrix.rows() << " x " << d.matrix.cols() << '\n';
        os << d.matrix.to_text();
    }
    return os.str();
}

}  // namespace cuphom
