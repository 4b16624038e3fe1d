#pragma once

#include <initializer_list>
#include <set>

namespace qs {

/// Formal sum over the two-element field: a finite set of terms where
/// addition is symmetric difference. T must be totally ordered.
template <class T>
class Gf2Sum {
 public:
  using value_type = T;
  using const_iterator = typename std::set<T>::const_iterator;

  Gf2Sum() = default;
  Gf2Sum(std::initializer_list<T> terms) {
    for (const auto& t : terms) toggle(t);
  }

  void toggle(const T& term) {
    auto [it, inserted] = terms_.insert(term);
    if (!inserted) terms_.erase(it);
  }

  Gf2Sum& operator+=(const Gf2Sum& other) {
    for (const auto& t : other.terms_) toggle(t);
    return *this;
  }
  friend Gf2Sum operator+(Gf2Sum a, const Gf2Sum& b) { return a += b; }

  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  bool contains(const T& term) const { return terms_.count(term) != 0; }
  const_iterator begin() const { return terms_.begin(); }
  const_iterator end() const { return terms_.end(); }
  const std::set<T>& terms() const { return terms_; }

  friend bool operator==(const Gf2Sum&, const Gf2Sum&) = default;

 private:
  std::set<T> terms_;
};

}  // namespace qs
