#ifndef MIGRANT_OUTCOME_HPP
#define MIGRANT_OUTCOME_HPP

#include <stdexcept>
#include <utility>
#include <variant>

namespace migrant {

// Value-or-signal result for recoverable conditions (absent years, refused
// fits). Fatal conditions throw.
template <class T, class E>
class Outcome {
  public:
    Outcome(T value) : state_(std::in_place_index<0>, std::move(value)) {}
    Outcome(E error) : state_(std::in_place_index<1>, std::move(error)) {}

    bool has_value() const noexcept { return state_.index() == 0; }
    explicit operator bool() const noexcept { return has_value(); }

    const T& value() const& {
        if (!has_value()) throw std::logic_error("Outcome holds no value");
        return std::get<0>(state_);
    }
    T&& value() && {
        if (!has_value()) throw std::logic_error("Outcome holds no value");
        return std::get<0>(std::move(state_));
    }
    const E& error() const& {
        if (has_value()) throw std::logic_error("Outcome holds a value");
        return std::get<1>(state_);
    }

    const T& operator*() const& { return value(); }
    const T* operator->() const { return &value(); }

  private:
    std::variant<T, E> state_;
};

} // namespace migrant

#endif // MIGRANT_OUTCOME_HPP
