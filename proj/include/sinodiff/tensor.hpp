#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "sinodiff/errors.hpp"
#include "sinodiff/rng.hpp"

namespace sinodiff {

inline std::int64_t shape_numel(const std::vector<int>& shape) {
    std::int64_t n = 1;
    for (int d : shape) n *= d;
    return n;
}

inline std::string shape_str(const std::vector<int>& shape) {
    std::string s = "[";
    for (std::size_t i = 0; i < shape.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(shape[i]);
    }
    return s + "]";
}

/// Dense row-major tensor. Production code instantiates float (32-bit
/// storage); gradient and adjoint tests instantiate double.
template <typename T>
struct Tensor {
    std::vector<int> shape;
    std::vector<T> data;

    Tensor() = default;
    explicit Tensor(std::vector<int> s) : shape(std::move(s)) {
        for (int d : shape)
            if (d <= 0) throw InvalidArgument("tensor dims must be positive, got " + shape_str(shape));
        data.assign(static_cast<std::size_t>(shape_numel(shape)), T(0));
    }
    Tensor(std::vector<int> s, std::vector<T> values) : shape(std::move(s)), data(std::move(values)) {
        if (static_cast<std::int64_t>(data.size()) != shape_numel(shape))
            throw InvalidArgument("tensor data length does not match shape " + shape_str(shape));
    }

    static Tensor zeros(std::vector<int> s) { return Tensor(std::move(s)); }

    static Tensor full(std::vector<int> s, T value) {
        Tensor t(std::move(s));
        for (T& x : t.data) x = value;
        return t;
    }

    static Tensor randn(std::vector<int> s, Rng& rng, T stddev = T(1)) {
        Tensor t(std::move(s));
        for (T& x : t.data) x = static_cast<T>(rng.normal()) * stddev;
        return t;
    }

    std::int64_t numel() const { return static_cast<std::int64_t>(data.size()); }
    bool same_shape(const Tensor& other) const { return shape == other.shape; }
    int dim(int i) const { return shape[static_cast<std::size_t>(i)]; }
    int rank() const { return static_cast<int>(shape.size()); }

    bool all_finite() const {
        for (T x : data)
            if (!std::isfinite(static_cast<double>(x))) return false;
        return true;
    }

    template <typename U>
    Tensor<U> cast() const {
        Tensor<U> out;
        out.shape = shape;
        out.data.resize(data.size());
        for (std::size_t i = 0; i < data.size(); ++i) out.data[i] = static_cast<U>(data[i]);
        return out;
    }
};

using TensorF = Tensor<float>;
using TensorD = Tensor<double>;

/// Latent grids are tensors with shape [channels, h, w].
template <typename T>
using LatentTensor = Tensor<T>;

template <typename T>
void check_same_shape(const Tensor<T>& a, const Tensor<T>& b, const char* what) {
    if (!a.same_shape(b))
        throw InvalidArgument(std::string(what) + ": shape mismatch " + shape_str(a.shape) +
                              " vs " + shape_str(b.shape));
}

}  // namespace sinodiff
