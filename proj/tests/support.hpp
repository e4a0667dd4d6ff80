#pragma once

// Test fixtures and independent reference implementations. The oracles work
// on plain adjacency matrices and doubles and share no code with the library.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "fcolor/probability.hpp"

namespace testing {

using Adjacency = std::vector<std::vector<bool>>;

fcolor::SourceModel example1();
fcolor::SourceModel complete_model(int k);    // identity function, all-positive pmf
fcolor::SourceModel constant_model(int k);    // f is constant
fcolor::SourceModel random_model(std::mt19937_64& rng, int max_alphabet = 6);

std::string data_dir();

namespace oracle {

double entropy(const std::vector<double>& p);

// Edge rule evaluated directly on the pmf matrix and function table.
Adjacency characteristic(const fcolor::SourceModel& m);

// Tuples over k symbols in lexicographic order; adjacent iff distinct and
// some coordinate pair is adjacent.
Adjacency power(const Adjacency& g, unsigned n);

std::vector<std::vector<int>> independent_sets(const Adjacency& g, bool maximal_only);

// Plain backtracking over colors 0..k-1 in vertex order.
int chromatic_number(const Adjacency& g);

// Least a admitting an a:b coloring, by backtracking over b-subsets (tiny graphs).
int fold_chromatic_number(const Adjacency& g, int b);

// Minimum over partitions into independent sets of the partition entropy.
double min_entropy_partition(const Adjacency& g, const std::vector<double>& p);

// Minimum entropy of the color-set variable over all a:b colorings (tiny graphs).
double min_entropy_fold(const Adjacency& g, const std::vector<double>& p, int b, int a);

// Expected length of an optimal prefix code: sum of all merged weights.
double huffman_cost(std::vector<double> p);

}  // namespace oracle
}  // namespace testing
