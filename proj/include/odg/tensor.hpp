#pragma once

#include "odg/common.hpp"

#include <map>
#include <numeric>
#include <string>
#include <vector>

namespace odg {

/// Dense row-major tensor of doubles. Shapes are small (network weights and
/// activations), so this stays deliberately simple.
struct Tensor {
    std::vector<int> shape;
    std::vector<double> v;

    Tensor() = default;
    explicit Tensor(std::vector<int> s) : shape(std::move(s)) {
        v.assign(static_cast<std::size_t>(numel(shape)), 0.0);
    }

    static std::int64_t numel(const std::vector<int>& s) {
        std::int64_t n = 1;
        for (int d : s) n *= d;
        return n;
    }

    std::int64_t size() const { return static_cast<std::int64_t>(v.size()); }
    int rows() const { return shape.empty() ? 0 : shape[0]; }
    int cols() const { return shape.size() < 2 ? 1 : shape[1]; }

    double& at(int r, int c) { return v[static_cast<std::size_t>(r) * cols() + c]; }
    double at(int r, int c) const { return v[static_cast<std::size_t>(r) * cols() + c]; }

    double* row(int r) { return v.data() + static_cast<std::size_t>(r) * cols(); }
    const double* row(int r) const { return v.data() + static_cast<std::size_t>(r) * cols(); }

    void zero() { std::fill(v.begin(), v.end(), 0.0); }
};

/// Flat container of named tensors. Iteration order is the sorted name order,
/// which fixes the serialization layout and the optimizer's parameter order.
class ParamStore {
public:
    Tensor& add(const std::string& name, std::vector<int> shape) {
        auto [it, inserted] = params_.try_emplace(name, Tensor(std::move(shape)));
        if (!inserted) throw std::logic_error("parameter already registered: " + name);
        return it->second;
    }

    bool has(const std::string& name) const { return params_.count(name) != 0; }

    Tensor& at(const std::string& name) {
        auto it = params_.find(name);
        if (it == params_.end()) throw std::logic_error("unknown parameter: " + name);
        return it->second;
    }
    const Tensor& at(const std::string& name) const {
        auto it = params_.find(name);
        if (it == params_.end()) throw std::logic_error("unknown parameter: " + name);
        return it->second;
    }

    std::map<std::string, Tensor>& items() { return params_; }
    const std::map<std::string, Tensor>& items() const { return params_; }

    std::int64_t total_size() const {
        std::int64_t n = 0;
        for (const auto& [k, t] : params_) n += t.size();
        return n;
    }

    /// Gradient (or moment) store with the same names and shapes, zeroed.
    ParamStore zeros_like() const {
        ParamStore g;
        for (const auto& [k, t] : params_) g.add(k, t.shape);
        return g;
    }

    void zero_all() {
        for (auto& [k, t] : params_) t.zero();
    }

private:
    std::map<std::string, Tensor> params_;
};

} // namespace odg
