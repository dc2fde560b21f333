#include "hmfa/vertex_set.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace hmfa {

VertexSet::VertexSet(std::size_t universe)
    : universe_(universe), words_((universe + 63) / 64, 0)
{
}

VertexSet VertexSet::full(std::size_t universe)
{
    VertexSet s(universe);
    for (Vertex v = 0; v < universe; ++v)
        s.insert(v);
    return s;
}

VertexSet VertexSet::from_indices(std::size_t universe, std::span<const Vertex> members)
{
    VertexSet s(universe);
    for (Vertex v : members)
        s.insert(v);
    return s;
}

VertexSet VertexSet::from_mask(std::size_t universe, std::uint64_t mask)
{
    if (universe > 64)
        throw std::invalid_argument("VertexSet::from_mask: universe exceeds 64");
    if (universe < 64 && (mask >> universe) != 0)
        throw std::invalid_argument("VertexSet::from_mask: mask has bits outside the universe");
    VertexSet s(universe);
    if (universe > 0)
        s.words_[0] = mask;
    s.size_ = static_cast<std::size_t>(std::popcount(mask));
    return s;
}

void VertexSet::insert(Vertex v)
{
    if (v >= universe_)
        throw std::out_of_range("VertexSet::insert: vertex out of range");
    auto& w = words_[v >> 6];
    const std::uint64_t bit = 1ULL << (v & 63);
    if ((w & bit) == 0) {
        w |= bit;
        ++size_;
    }
}

void VertexSet::erase(Vertex v)
{
    if (v >= universe_)
        throw std::out_of_range("VertexSet::erase: vertex out of range");
    auto& w = words_[v >> 6];
    const std::uint64_t bit = 1ULL << (v & 63);
    if ((w & bit) != 0) {
        w &= ~bit;
        --size_;
    }
}

VertexSet VertexSet::complement() const
{
    VertexSet c(universe_);
    for (std::size_t k = 0; k < words_.size(); ++k)
        c.words_[k] = ~words_[k];
    if (universe_ % 64 != 0 && !c.words_.empty())
        c.words_.back() &= (1ULL << (universe_ % 64)) - 1;
    c.size_ = universe_ - size_;
    return c;
}

bool VertexSet::is_disjoint(const VertexSet& other) const
{
    const std::size_t k = std::min(words_.size(), other.words_.size());
    for (std::size_t i = 0; i < k; ++i)
        if ((words_[i] & other.words_[i]) != 0)
            return false;
    return true;
}

std::vector<Vertex> VertexSet::indices() const
{
    std::vector<Vertex> out;
    out.reserve(size_);
    for (std::size_t k = 0; k < words_.size(); ++k) {
        std::uint64_t w = words_[k];
        while (w != 0) {
            const int bit = std::countr_zero(w);
            out.push_back(static_cast<Vertex>(k * 64 + static_cast<std::size_t>(bit)));
            w &= w - 1;
        }
    }
    return out;
}

std::uint64_t VertexSet::mask() const
{
    if (universe_ > 64)
        throw std::logic_error("VertexSet::mask: universe exceeds 64");
    return words_.empty() ? 0 : words_[0];
}

} // namespace hmfa
