#ifndef HADROW_TESTS_ALLOC_TRACKER_HPP_
#define HADROW_TESTS_ALLOC_TRACKER_HPP_

#include <cstddef>

// Heap accounting backed by a replacement global operator new/delete.
namespace alloc_tracker {

std::size_t live_bytes();
std::size_t peak_bytes();
std::size_t largest_allocation();

/// Restarts peak and largest-allocation tracking from the current state.
void reset();

/// Measures heap growth between construction and the queries.
class Scope {
public:
    Scope();

    std::size_t peak_additional() const;
    std::size_t largest_allocation() const;

private:
    std::size_t baseline_;
};

}  // namespace alloc_tracker

#endif  // HADROW_TESTS_ALLOC_TRACKER_HPP_
