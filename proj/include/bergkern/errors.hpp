#pragma once

#include <stdexcept>
#include <string>

namespace bergkern {

// Raised when an iterative or adaptive computation exhausts its budget.
// Carries the best error bound that was reached before giving up.
class convergence_error : public std::runtime_error {
public:
   convergence_error(const std::string& what, double achieved_bound)
      : std::runtime_error(what), achieved_bound_(achieved_bound)
   {
   }

   double achieved_bound() const noexcept { return achieved_bound_; }

private:
   double achieved_bound_;
};

} // namespace bergkern
