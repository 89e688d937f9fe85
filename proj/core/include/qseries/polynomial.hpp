#ifndef QSERIES_POLYNOMIAL_HPP
#define QSERIES_POLYNOMIAL_HPP

#include <map>
#include <string>
#include <vector>

#include "qseries/rational.hpp"
#include "qseries/series.hpp"

namespace qseries {

/* Polynomial over Q in a fixed number of variables, sparse exponent map.
 * Used for the Bell / Eulerian / N_i / P_k machinery, whose values are then
 * evaluated at scalars or at truncated series. */
class PolyQ {
public:
    explicit PolyQ(int nvars) : nvars_(nvars) {}

    static PolyQ zero(int nvars) { return PolyQ(nvars); }
    static PolyQ constant(int nvars, const Rat& c);
    static PolyQ variable(int nvars, int index); // x_index

    int nvars() const { return nvars_; }
    bool is_zero() const { return c_.empty(); }
    size_t term_count() const { return c_.size(); }
    Rat coeff(const std::vector<int>& e) const;

    void add_term(const std::vector<int>& e, const Rat& c);

    PolyQ operator-() const;
    friend PolyQ operator+(const PolyQ& a, const PolyQ& b);
    friend PolyQ operator-(const PolyQ& a, const PolyQ& b);
    friend PolyQ operator*(const PolyQ& a, const PolyQ& b);
    PolyQ scaled(const Rat& s) const;
    bool operator==(const PolyQ& o) const {
        return nvars_ == o.nvars_ && c_ == o.c_;
    }

    Scalar eval(const std::vector<Scalar>& args) const;
    Series eval(const VarSpec& spec, const std::vector<Series>& args) const;

    /* Substitute polynomials for the variables (all over the same target
     * variable count). */
    PolyQ compose(const std::vector<PolyQ>& args) const;

    void for_each(
        const std::function<void(const std::vector<int>&, const Rat&)>& fn) const;
    std::string str(const std::string& stem = "x") const;

private:
    int nvars_;
    std::map<std::vector<int>, Rat> c_;
};

} // namespace qseries

#endif
