// Sigmoid MLP with one hidden layer, trained by online gradient descent.
// Networks are plain values: copy freely, mutate only what you own. The
// whole training trajectory is a pure function of (initial net, patterns,
// config), which the selection pipeline relies on.
#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "gabp/corpus.hpp"
#include "gabp/pattern.hpp"

namespace gabp {

struct NetworkShape {
    static int default_hidden(int n_input, int n_output);  // round(sqrt(in*out))

    int n_input = 256;
    int n_hidden = 32;  // = default_hidden(256, 4)
    int n_output = 4;

    static constexpr int kHiddenLayers = 1;

    bool operator==(const NetworkShape&) const = default;
};

struct Network {
    NetworkShape shape;
    std::vector<double> w_ih;  // n_hidden x n_input, row-major
    std::vector<double> b_h;   // n_hidden
    std::vector<double> w_ho;  // n_output x n_hidden, row-major
    std::vector<double> b_o;   // n_output

    bool operator==(const Network&) const = default;
};

struct TrainConfig {
    double tolerance = 0.05;
    double learning_rate = 0.5;
    int max_epochs = 2000;
    std::uint64_t init_seed = 0;
    double init_range = 0.5;  // weights uniform in [-init_range, +init_range]
};

struct TrainingPattern {
    std::vector<double> input;
    std::vector<double> target;
};

struct TrainResult {
    Network net;
    int epochs = 0;
    bool converged = false;
    // Smallest max-per-pattern error seen at any convergence check,
    // including the one before the first epoch.
    double best_max_error = 1.0;
};

// All parameters i.i.d. uniform on [-range, +range], drawn in snapshot order
// (w_ih row-major, b_h, w_ho row-major, b_o). Same seed, same network.
Network init_network(const NetworkShape& shape, std::uint64_t seed, double range);

double sigmoid(double x);

// out_k = sigmoid(b_o[k] + sum_j w_ho[k][j] * sigmoid(b_h[j] + sum_i w_ih[j][i] * x[i]))
std::vector<double> forward(const Network& net, std::span<const double> input);

// Root mean square deviation between output and target; in [0,1] for
// outputs in [0,1] and binary targets.
double pattern_error(std::span<const double> output, std::span<const double> target);

// One gradient step on E = 1/2 sum_k (out_k - target_k)^2.
void backprop_step(Network& net, std::span<const double> input, std::span<const double> target, double lr);

// Epochs of per-pattern updates in sequence order until every pattern's
// error is < cfg.tolerance (checked before the first epoch and after each
// full one), or max_epochs is exhausted. Non-convergence is a result, not
// an error.
TrainResult train_until_recognized(Network net, std::span<const TrainingPattern> patterns,
                                   const TrainConfig& cfg);

// Max over all corpus cells of the error against the cell's class code.
double residual_fitness(const Network& net, const Corpus& corpus);

// Nearest class code to the network output (Euclidean); ties go to the
// lowest class index.
int recall_class(const Network& net, const BitPattern& pattern, int n_classes);

std::vector<double> to_input(const BitPattern& pattern);
std::vector<double> to_target(std::span<const std::uint8_t> code);

// Text snapshot: "shape <in> <hidden> <out>" then one parameter per line in
// the order above, printed with enough digits to round-trip bit-exactly.
void save_network(const Network& net, const std::filesystem::path& path);
Network load_network(const std::filesystem::path& path);

}  // namespace gabp
