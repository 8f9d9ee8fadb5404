#include "dunkl/error.hpp"

#include <sstream>

namespace dunkl {

namespace {

std::string radicand_message(const std::string& radicand, double value) {
  std::ostringstream os;
  os.precision(17);
  os << "negative radicand in " << radicand << ": " << value;
  return os.str();
}

}  // namespace

NegativeRadicand::NegativeRadicand(std::string radicand, double value)
    : Error(radicand_message(radicand, value)), radicand_(std::move(radicand)), value_(value) {}

}  // namespace dunkl
