#include "scig/types.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace scig {

void Graph::add_edge(int k, int l) {
    if (k == l) throw std::invalid_argument("Graph: self-loops are not allowed");
    if (k < 0 || l < 0 || k >= p_ || l >= p_) throw std::invalid_argument("Graph: node index out of range");
    edges_.insert({std::min(k, l), std::max(k, l)});
}

bool Graph::has_edge(int k, int l) const {
    if (k == l) return false;
    return edges_.count({std::min(k, l), std::max(k, l)}) > 0;
}

std::vector<int> Graph::neighbors(int r) const {
    std::vector<int> out;
    for (const auto& [k, l] : edges_) {
        if (k == r) out.push_back(l);
        if (l == r) out.push_back(k);
    }
    std::sort(out.begin(), out.end());
    return out;
}

int Graph::degree(int r) const { return static_cast<int>(neighbors(r).size()); }

int Graph::max_degree() const {
    int best = 0;
    for (int r = 0; r < p_; ++r) best = std::max(best, degree(r));
    return best;
}

double WindowFunction::value(long m) const {
    const long a = std::labs(m);
    if (a > support) return 0.0;
    switch (kind) {
        case WindowKind::rectangular:
            return 1.0;
        case WindowKind::bartlett:
            return 1.0 - static_cast<double>(a) / static_cast<double>(support + 1);
        case WindowKind::gaussian:
            return std::exp(-static_cast<double>(a) * static_cast<double>(a) / width);
    }
    return 0.0;
}

double WindowFunction::l1_norm() const {
    double sum = value(0);
    for (long m = 1; m <= support; ++m) sum += 2.0 * std::abs(value(m));
    return sum;
}

WindowFunction WindowFunction::rectangular_window(int support) {
    return WindowFunction{WindowKind::rectangular, support, 0.0};
}

WindowFunction WindowFunction::bartlett_window(int support) {
    return WindowFunction{WindowKind::bartlett, support, 0.0};
}

WindowFunction WindowFunction::gaussian_window(double width, int support) {
    if (width <= 0.0) throw std::invalid_argument("gaussian window needs width > 0");
    return WindowFunction{WindowKind::gaussian, support, width};
}

double GroupedCoefficients::l21_norm() const {
    double sum = 0.0;
    for (int g = 0; g < group_count(); ++g) sum += group_norm(g);
    return sum;
}

}  // namespace scig
