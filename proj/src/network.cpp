#include "gabp/network.hpp"

#include <cmath>
#include <fstream>
#include <limits>

#include "gabp/errors.hpp"
#include "gabp/rng.hpp"

namespace gabp {

int NetworkShape::default_hidden(int n_input, int n_output) {
    return static_cast<int>(std::lround(std::sqrt(static_cast<double>(n_input) * n_output)));
}

namespace {

void validate_shape(const NetworkShape& shape) {
    if (shape.n_input < 1 || shape.n_hidden < 1 || shape.n_output < 1)
        throw InvalidConfig("network shape must have positive layer sizes");
}

}  // namespace

Network init_network(const NetworkShape& shape, std::uint64_t seed, double range) {
    validate_shape(shape);
    if (!(range > 0.0)) throw InvalidConfig("init range must be > 0");
    Network net;
    net.shape = shape;
    net.w_ih.resize(static_cast<std::size_t>(shape.n_hidden) * shape.n_input);
    net.b_h.resize(static_cast<std::size_t>(shape.n_hidden));
    net.w_ho.resize(static_cast<std::size_t>(shape.n_output) * shape.n_hidden);
    net.b_o.resize(static_cast<std::size_t>(shape.n_output));
    Rng rng(seed);
    for (auto* params : {&net.w_ih, &net.b_h, &net.w_ho, &net.b_o})
        for (double& w : *params) w = uniform_real(rng, -range, range);
    return net;
}

double sigmoid(double x) {
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
}

namespace {

void forward_into(const Network& net, std::span<const double> input, std::span<double> hidden,
                  std::span<double> output) {
    const auto& s = net.shape;
    for (int j = 0; j < s.n_hidden; ++j) {
        const double* row = net.w_ih.data() + static_cast<std::size_t>(j) * s.n_input;
        double acc = net.b_h[static_cast<std::size_t>(j)];
        for (int i = 0; i < s.n_input; ++i) acc += row[i] * input[static_cast<std::size_t>(i)];
        hidden[static_cast<std::size_t>(j)] = sigmoid(acc);
    }
    for (int k = 0; k < s.n_output; ++k) {
        const double* row = net.w_ho.data() + static_cast<std::size_t>(k) * s.n_hidden;
        double acc = net.b_o[static_cast<std::size_t>(k)];
        for (int j = 0; j < s.n_hidden; ++j) acc += row[j] * hidden[static_cast<std::size_t>(j)];
        output[static_cast<std::size_t>(k)] = sigmoid(acc);
    }
}

void check_input(const Network& net, std::span<const double> input) {
    if (static_cast<int>(input.size()) != net.shape.n_input)
        throw DimensionMismatch("input length " + std::to_string(input.size()) + ", expected " +
                                std::to_string(net.shape.n_input));
}

}  // namespace

std::vector<double> forward(const Network& net, std::span<const double> input) {
    check_input(net, input);
    std::vector<double> hidden(static_cast<std::size_t>(net.shape.n_hidden));
    std::vector<double> output(static_cast<std::size_t>(net.shape.n_output));
    forward_into(net, input, hidden, output);
    return output;
}

double pattern_error(std::span<const double> output, std::span<const double> target) {
    if (output.size() != target.size())
        throw DimensionMismatch("output length " + std::to_string(output.size()) + " vs target " +
                                std::to_string(target.size()));
    double sum_sq = 0.0;
    for (std::size_t k = 0; k < output.size(); ++k) {
        const double d = output[k] - target[k];
        sum_sq += d * d;
    }
    return std::sqrt(sum_sq / static_cast<double>(output.size()));
}

namespace {

struct StepWorkspace {
    std::vector<double> hidden, output, delta_o, delta_h;

    explicit StepWorkspace(const NetworkShape& s)
        : hidden(static_cast<std::size_t>(s.n_hidden)),
          output(static_cast<std::size_t>(s.n_output)),
          delta_o(static_cast<std::size_t>(s.n_output)),
          delta_h(static_cast<std::size_t>(s.n_hidden)) {}
};

void backprop_step_into(Network& net, std::span<const double> input, std::span<const double> target,
                        double lr, StepWorkspace& ws) {
    const auto& s = net.shape;
    forward_into(net, input, ws.hidden, ws.output);

    for (int k = 0; k < s.n_output; ++k) {
        const double o = ws.output[static_cast<std::size_t>(k)];
        ws.delta_o[static_cast<std::size_t>(k)] = (o - target[static_cast<std::size_t>(k)]) * o * (1.0 - o);
    }

    // Hidden deltas use the pre-update output weights.
    for (int j = 0; j < s.n_hidden; ++j) {
        double acc = 0.0;
        for (int k = 0; k < s.n_output; ++k)
            acc += ws.delta_o[static_cast<std::size_t>(k)] * net.w_ho[static_cast<std::size_t>(k) * s.n_hidden + j];
        const double h = ws.hidden[static_cast<std::size_t>(j)];
        ws.delta_h[static_cast<std::size_t>(j)] = acc * h * (1.0 - h);
    }

    for (int k = 0; k < s.n_output; ++k) {
        double* row = net.w_ho.data() + static_cast<std::size_t>(k) * s.n_hidden;
        const double d = lr * ws.delta_o[static_cast<std::size_t>(k)];
        for (int j = 0; j < s.n_hidden; ++j) row[j] -= d * ws.hidden[static_cast<std::size_t>(j)];
        net.b_o[static_cast<std::size_t>(k)] -= d;
    }
    for (int j = 0; j < s.n_hidden; ++j) {
        double* row = net.w_ih.data() + static_cast<std::size_t>(j) * s.n_input;
        const double d = lr * ws.delta_h[static_cast<std::size_t>(j)];
        for (int i = 0; i < s.n_input; ++i) row[i] -= d * input[static_cast<std::size_t>(i)];
        net.b_h[static_cast<std::size_t>(j)] -= d;
    }
}

}  // namespace

void backprop_step(Network& net, std::span<const double> input, std::span<const double> target, double lr) {
    check_input(net, input);
    if (static_cast<int>(target.size()) != net.shape.n_output)
        throw DimensionMismatch("target length " + std::to_string(target.size()) + ", expected " +
                                std::to_string(net.shape.n_output));
    StepWorkspace ws(net.shape);
    backprop_step_into(net, input, target, lr, ws);
}

TrainResult train_until_recognized(Network net, std::span<const TrainingPattern> patterns,
                                   const TrainConfig& cfg) {
    if (patterns.empty()) throw InvalidConfig("training pattern sequence is empty");
    if (!(cfg.tolerance > 0.0 && cfg.tolerance < 1.0)) throw InvalidConfig("tolerance must be in (0,1)");
    if (!(cfg.learning_rate > 0.0)) throw InvalidConfig("learning rate must be > 0");
    if (cfg.max_epochs < 0) throw InvalidConfig("max_epochs must be >= 0");

    StepWorkspace ws(net.shape);
    auto max_error = [&] {
        double worst = 0.0;
        for (const auto& p : patterns) {
            check_input(net, p.input);
            if (static_cast<int>(p.target.size()) != net.shape.n_output)
                throw DimensionMismatch("target length " + std::to_string(p.target.size()));
            forward_into(net, p.input, ws.hidden, ws.output);
            worst = std::max(worst, pattern_error(ws.output, p.target));
        }
        return worst;
    };

    TrainResult result;
    double err = max_error();
    result.best_max_error = err;
    if (err < cfg.tolerance) {
        result.net = std::move(net);
        result.converged = true;
        return result;
    }
    for (int epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
        for (const auto& p : patterns) backprop_step_into(net, p.input, p.target, cfg.learning_rate, ws);
        err = max_error();
        result.best_max_error = std::min(result.best_max_error, err);
        if (err < cfg.tolerance) {
            result.net = std::move(net);
            result.epochs = epoch;
            result.converged = true;
            return result;
        }
    }
    result.net = std::move(net);
    result.epochs = cfg.max_epochs;
    return result;
}

double residual_fitness(const Network& net, const Corpus& corpus) {
    double worst = 0.0;
    for (int c = 0; c < corpus.n_classes(); ++c) {
        const auto target = to_target(class_code(c, net.shape.n_output));
        for (int v = 0; v < corpus.n_variants(); ++v) {
            const auto out = forward(net, to_input(corpus.pattern(c, v)));
            worst = std::max(worst, pattern_error(out, target));
        }
    }
    return worst;
}

int recall_class(const Network& net, const BitPattern& pattern, int n_classes) {
    const auto out = forward(net, to_input(pattern));
    int best_class = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (int c = 0; c < n_classes; ++c) {
        const auto code = class_code(c, net.shape.n_output);
        double dist = 0.0;
        for (std::size_t k = 0; k < out.size(); ++k) {
            const double d = out[k] - code[k];
            dist += d * d;
        }
        if (dist < best_dist) {
            best_dist = dist;
            best_class = c;
        }
    }
    return best_class;
}

std::vector<double> to_input(const BitPattern& pattern) {
    std::vector<double> input(BitPattern::kGenes);
    for (int i = 0; i < BitPattern::kGenes; ++i) input[static_cast<std::size_t>(i)] = pattern.bits[static_cast<std::size_t>(i)];
    return input;
}

std::vector<double> to_target(std::span<const std::uint8_t> code) {
    return {code.begin(), code.end()};
}

void save_network(const Network& net, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoFailure("cannot open " + path.string() + " for writing");
    out.precision(17);
    out << "shape " << net.shape.n_input << ' ' << net.shape.n_hidden << ' ' << net.shape.n_output << '\n';
    for (const auto* params : {&net.w_ih, &net.b_h, &net.w_ho, &net.b_o})
        for (double w : *params) out << w << '\n';
    if (!out) throw IoFailure("write failed: " + path.string());
}

Network load_network(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoFailure("cannot open " + path.string());
    std::string keyword;
    NetworkShape shape;
    in >> keyword >> shape.n_input >> shape.n_hidden >> shape.n_output;
    if (keyword != "shape" || in.fail()) throw IoFailure(path.string() + ": bad shape line");
    validate_shape(shape);
    Network net;
    net.shape = shape;
    net.w_ih.resize(static_cast<std::size_t>(shape.n_hidden) * shape.n_input);
    net.b_h.resize(static_cast<std::size_t>(shape.n_hidden));
    net.w_ho.resize(static_cast<std::size_t>(shape.n_output) * shape.n_hidden);
    net.b_o.resize(static_cast<std::size_t>(shape.n_output));
    for (auto* params : {&net.w_ih, &net.b_h, &net.w_ho, &net.b_o})
        for (double& w : *params)
            if (!(in >> w)) throw IoFailure(path.string() + ": truncated weight list");
    return net;
}

}  // namespace gabp
