#ifndef CRKDG_TABLEAU_HPP
#define CRKDG_TABLEAU_HPP

#include <string>
#include <vector>

namespace crkdg {

// Explicit Runge-Kutta tableau (A, b, c) with the derived forward-substitution
// coefficients d_il (d_i0 = 1, d_il = sum_{m=l}^{i-1} a_im d_{m,l-1}), which
// express stage i applied to a linear operator as sum_l d_il (dt L)^l.
class ButcherTableau {
public:
    ButcherTableau(std::string name, int stages, std::vector<double> A,
                   std::vector<double> b, std::vector<double> c, int order,
                   int linear_order);

    std::string name;
    int stages = 0;
    int order = 0;        // nominal order
    int linear_order = 0; // p such that sum_i b_i d_il = 1/(l+1)! for l < p; 0 if unflagged

    double a(int i, int j) const { return A_[i * stages + j]; }
    double b(int i) const { return b_[i]; }
    double c(int i) const { return c_[i]; }
    double d(int i, int l) const { return d_[i * stages + l]; }

    // max_l |sum_i b_i d_il - 1/(l+1)!| over l = 0..p-1
    double linear_order_defect(int p) const;

private:
    std::vector<double> A_, b_, c_, d_;
};

// Built-in tableaus: euler, midpoint, rk3, heun, ssprk3, rk4, fehlberg5.
const ButcherTableau& tableau_by_name(const std::string& name);
std::vector<std::string> builtin_tableau_names();

} // namespace crkdg

#endif
