#include "ddstab/errors.hpp"

#include <sstream>
#include <utility>

namespace ddstab {

namespace {

std::string out_of_range_message(double query, double begin, double end) {
  std::ostringstream os;
  os.precision(17);
  os << "history query t=" << query << " outside buffer span [" << begin << ", " << end << "]";
  return os.str();
}

std::string blowup_message(double t, const std::string& state) {
  std::ostringstream os;
  os.precision(17);
  os << "non-finite right-hand side at t=" << t << "; state: " << state;
  return os.str();
}

}  // namespace

OutOfRangeError::OutOfRangeError(double query, double span_begin, double span_end)
    : Error(out_of_range_message(query, span_begin, span_end)),
      query_(query),
      begin_(span_begin),
      end_(span_end) {}

NumericBlowupError::NumericBlowupError(double t, std::string state_summary)
    : Error(blowup_message(t, state_summary)), t_(t) {}

}  // namespace ddstab
