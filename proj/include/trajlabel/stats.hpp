#pragma once

#include <vector>

namespace trajlabel {

// Fractional ranks (1-based, ties get the average of their positions).
std::vector<double> fractional_ranks(const std::vector<double>& values);

// Spearman rank correlation: Pearson correlation of fractional ranks.
// Throws std::invalid_argument on size mismatch, fewer than two samples, or
// when either input is constant (the correlation is undefined).
double spearman(const std::vector<double>& a, const std::vector<double>& b);

double median(std::vector<double> values);

}  // namespace trajlabel
