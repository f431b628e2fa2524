#include "crkdg/tableau.hpp"
#include "crkdg/errors.hpp"

#include <cmath>
#include <map>

namespace crkdg {

ButcherTableau::ButcherTableau(std::string name_, int stages_, std::vector<double> A,
                               std::vector<double> b, std::vector<double> c, int order_,
                               int lin_order)
    : name(std::move(name_)), stages(stages_), order(order_), linear_order(lin_order),
      A_(std::move(A)), b_(std::move(b)), c_(std::move(c)) {
    if (stages < 1 || static_cast<int>(A_.size()) != stages * stages ||
        static_cast<int>(b_.size()) != stages || static_cast<int>(c_.size()) != stages)
        throw ParameterError("ButcherTableau: inconsistent sizes for " + name);

    for (int i = 0; i < stages; ++i)
        for (int j = i; j < stages; ++j)
            if (a(i, j) != 0.0)
                throw ParameterError("ButcherTableau: " + name + " is not explicit");

    double bsum = 0.0;
    for (int i = 0; i < stages; ++i) bsum += b_[i];
    if (std::abs(bsum - 1.0) > 1e-14)
        throw ParameterError("ButcherTableau: weights of " + name + " do not sum to 1");

    // d_il by forward substitution (0-based stages).
    d_.assign(stages * stages, 0.0);
    for (int i = 0; i < stages; ++i) d_[i * stages + 0] = 1.0;
    for (int i = 0; i < stages; ++i)
        for (int l = 1; l <= i; ++l) {
            double s = 0.0;
            for (int m = l - 1; m < i; ++m) s += a(i, m) * d(m, l - 1);
            d_[i * stages + l] = s;
        }

    if (linear_order > 0 && linear_order_defect(linear_order) > 1e-14)
        throw ParameterError("ButcherTableau: " + name + " fails its order conditions");
}

double ButcherTableau::linear_order_defect(int p) const {
    double worst = 0.0;
    double fact = 1.0; // (l+1)!
    for (int l = 0; l < p; ++l) {
        fact *= (l + 1);
        double s = 0.0;
        for (int i = 0; i < stages; ++i) s += b_[i] * d(i, l);
        worst = std::max(worst, std::abs(s - 1.0 / fact));
    }
    return worst;
}

namespace {

std::map<std::string, ButcherTableau> make_builtins() {
    std::map<std::string, ButcherTableau> t;
    t.emplace("euler", ButcherTableau("euler", 1, {0.0}, {1.0}, {0.0}, 1, 1));

    t.emplace("midpoint", ButcherTableau("midpoint", 2,
                                         {0.0, 0.0,
                                          0.5, 0.0},
                                         {0.0, 1.0}, {0.0, 0.5}, 2, 2));

    t.emplace("rk3", ButcherTableau("rk3", 3,
                                    {0.0,       0.0,       0.0,
                                     1.0 / 3.0, 0.0,       0.0,
                                     0.0,       2.0 / 3.0, 0.0},
                                    {0.25, 0.0, 0.75}, {0.0, 1.0 / 3.0, 2.0 / 3.0}, 3, 3));

    // Butcher form of the 2-stage SSP method (Heun).
    t.emplace("heun", ButcherTableau("heun", 2,
                                     {0.0, 0.0,
                                      1.0, 0.0},
                                     {0.5, 0.5}, {0.0, 1.0}, 2, 2));

    // Butcher form of the 3-stage SSP method.
    t.emplace("ssprk3", ButcherTableau("ssprk3", 3,
                                       {0.0,  0.0,  0.0,
                                        1.0,  0.0,  0.0,
                                        0.25, 0.25, 0.0},
                                       {1.0 / 6.0, 1.0 / 6.0, 2.0 / 3.0},
                                       {0.0, 1.0, 0.5}, 3, 3));

    t.emplace("rk4", ButcherTableau("rk4", 4,
                                    {0.0, 0.0, 0.0, 0.0,
                                     0.5, 0.0, 0.0, 0.0,
                                     0.0, 0.5, 0.0, 0.0,
                                     0.0, 0.0, 1.0, 0.0},
                                    {1.0 / 6.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 6.0},
                                    {0.0, 0.5, 0.5, 1.0}, 4, 4));

    // Fifth-order weights of the 6-stage Fehlberg pair.
    t.emplace("fehlberg5",
              ButcherTableau(
                  "fehlberg5", 6,
                  {0.0, 0.0, 0.0, 0.0, 0.0, 0.0,
                   0.25, 0.0, 0.0, 0.0, 0.0, 0.0,
                   3.0 / 32.0, 9.0 / 32.0, 0.0, 0.0, 0.0, 0.0,
                   1932.0 / 2197.0, -7200.0 / 2197.0, 7296.0 / 2197.0, 0.0, 0.0, 0.0,
                   439.0 / 216.0, -8.0, 3680.0 / 513.0, -845.0 / 4104.0, 0.0, 0.0,
                   -8.0 / 27.0, 2.0, -3544.0 / 2565.0, 1859.0 / 4104.0, -11.0 / 40.0, 0.0},
                  {16.0 / 135.0, 0.0, 6656.0 / 12825.0, 28561.0 / 56430.0, -9.0 / 50.0,
                   2.0 / 55.0},
                  {0.0, 0.25, 3.0 / 8.0, 12.0 / 13.0, 1.0, 0.5}, 5, 5));
    return t;
}

} // namespace

const ButcherTableau& tableau_by_name(const std::string& name) {
    static const std::map<std::string, ButcherTableau> builtins = make_builtins();
    auto it = builtins.find(name);
    if (it == builtins.end()) throw ConfigError("unknown tableau: " + name);
    return it->second;
}

std::vector<std::string> builtin_tableau_names() {
    return {"euler", "midpoint", "rk3", "heun", "ssprk3", "rk4", "fehlberg5"};
}

} // namespace crkdg
