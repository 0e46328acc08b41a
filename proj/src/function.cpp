#include "mlt/function.hpp"

namespace mlt {

EnvelopedFunction constant_function(int n, cplx value, double level) {
    std::vector<Func1D> row;
    row.push_back(Func1D{[value](double) { return value; }, 1.0, std::abs(value), 0.0});
    for (int i = 1; i < n; ++i)
        row.push_back(Func1D{[](double) { return cplx{1.0, 0.0}; }, 1.0, 1.0, 0.0});
    auto f = EnvelopedFunction::from_factors({row}, std::vector<double>(static_cast<size_t>(n), 0.0),
                                             std::max(level, std::abs(value)));
    return f;
}

EnvelopedFunction exponential_function(const std::vector<double>& omega) {
    std::vector<Func1D> row;
    for (double w : omega)
        row.push_back(Func1D{[w](double t) { return cplx{std::exp(w * t), 0.0}; }, 1.0, 1.0, w});
    return EnvelopedFunction::from_factors({row}, omega, 1.0);
}

}  // namespace mlt
