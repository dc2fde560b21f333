#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace hmfa {

using Vertex = std::uint32_t;

/// Subset of [0, n) with bitset storage and a cached cardinality.
class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(std::size_t universe);

    static VertexSet full(std::size_t universe);
    static VertexSet from_indices(std::size_t universe, std::span<const Vertex> members);
    /// Bit i of `mask` is vertex i. universe must be <= 64.
    static VertexSet from_mask(std::size_t universe, std::uint64_t mask);

    std::size_t universe() const noexcept { return universe_; }
    std::size_t size() const noexcept { return size_; }
    bool empty() const noexcept { return size_ == 0; }

    bool contains(Vertex v) const noexcept
    {
        return v < universe_ && ((words_[v >> 6] >> (v & 63)) & 1ULL) != 0;
    }
    void insert(Vertex v);
    void erase(Vertex v);

    VertexSet complement() const;
    bool is_disjoint(const VertexSet& other) const;

    /// Members in increasing order.
    std::vector<Vertex> indices() const;
    /// Low 64 members as a mask; universe must be <= 64.
    std::uint64_t mask() const;

    friend bool operator==(const VertexSet&, const VertexSet&) = default;

private:
    std::size_t universe_ = 0;
    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

} // namespace hmfa
