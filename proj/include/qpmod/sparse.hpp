#pragma once

#include <map>

#include "qpmod/scalar.hpp"

namespace qpmod {

// Sorted key -> nonzero coefficient. Zero coefficients are never stored, so
// structural equality is mathematical equality.
template <class Key>
class SparseTerms {
public:
    using Map = std::map<Key, Scalar>;
    using const_iterator = typename Map::const_iterator;

    void add(const Key& k, const Scalar& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = map_.try_emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) map_.erase(it);
        }
    }
    void add_all(const SparseTerms& o, const Scalar& factor = Scalar(1)) {
        if (factor.is_zero()) return;
        for (const auto& [k, c] : o.map_) add(k, factor.is_one() ? c : c * factor);
    }
    void scale(const Scalar& c) {
        if (c.is_zero()) {
            map_.clear();
            return;
        }
        if (c.is_one()) return;
        for (auto& kv : map_) kv.second *= c;
    }
    Scalar coeff(const Key& k) const {
        auto it = map_.find(k);
        return it == map_.end() ? Scalar(0) : it->second;
    }

    bool empty() const { return map_.empty(); }
    std::size_t size() const { return map_.size(); }
    const_iterator begin() const { return map_.begin(); }
    const_iterator end() const { return map_.end(); }
    const Map& map() const { return map_; }

    friend bool operator==(const SparseTerms& a, const SparseTerms& b) { return a.map_ == b.map_; }

private:
    Map map_;
};

}  // namespace qpmod
