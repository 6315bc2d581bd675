#include "pliml/orbit.hpp"

#include <algorithm>
#include <sstream>

#include "pliml/error.hpp"

namespace pliml {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<Rational> parse_list(std::string_view text) {
  std::vector<Rational> out;
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) out.push_back(Rational::parse(token));
  return out;
}

// Strips `label:` from the front of a section.
std::string_view expect_label(std::string_view section, std::string_view label) {
  section = trim(section);
  if (section.substr(0, label.size()) != label || section.size() <= label.size() || section[label.size()] != ':')
    fail(ErrorCode::parse, "orbit: expected '" + std::string(label) + ":'");
  return section.substr(label.size() + 1);
}

}  // namespace

BackwardOrbit::BackwardOrbit(std::vector<Rational> prefix, std::vector<Rational> period_block)
    : prefix_(std::move(prefix)), block_(std::move(period_block)) {
  if (block_.empty()) fail(ErrorCode::invalid_orbit, "orbit period block must be nonempty");
  for (const auto& q : prefix_)
    if (q < Rational(0) || q > Rational(1)) fail(ErrorCode::invalid_orbit, "orbit value " + q.str() + " outside [0,1]");
  for (const auto& q : block_)
    if (q < Rational(0) || q > Rational(1)) fail(ErrorCode::invalid_orbit, "orbit value " + q.str() + " outside [0,1]");

  // Primitive block: smallest d dividing |block| with block[i] == block[i mod d].
  const std::size_t n = block_.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool periodic = true;
    for (std::size_t i = d; i < n && periodic; ++i) periodic = block_[i] == block_[i - d];
    if (periodic) {
      block_.resize(d);
      break;
    }
  }
  // Shortest prefix: absorb trailing prefix entries that continue the cycle backwards.
  while (!prefix_.empty() && prefix_.back() == block_.back()) {
    prefix_.pop_back();
    std::rotate(block_.rbegin(), block_.rbegin() + 1, block_.rend());
  }
}

BackwardOrbit BackwardOrbit::constant(Rational value) { return BackwardOrbit({}, {std::move(value)}); }

BackwardOrbit BackwardOrbit::parse(std::string_view text) {
  text = trim(text);
  if (text.substr(0, 6) == "const:") return constant(Rational::parse(trim(text.substr(6))));
  const auto semi = text.find(';');
  if (semi == std::string_view::npos) fail(ErrorCode::parse, "orbit: expected 'prefix: ... ; period: ...'");
  auto prefix = parse_list(expect_label(text.substr(0, semi), "prefix"));
  auto block = parse_list(expect_label(text.substr(semi + 1), "period"));
  return BackwardOrbit(std::move(prefix), std::move(block));
}

std::size_t BackwardOrbit::position(std::uint64_t i) const {
  if (i < prefix_.size()) return static_cast<std::size_t>(i);
  return prefix_.size() + static_cast<std::size_t>((i - prefix_.size()) % block_.size());
}

const Rational& BackwardOrbit::at(std::uint64_t i) const {
  const std::size_t pos = position(i);
  return pos < prefix_.size() ? prefix_[pos] : block_[pos - prefix_.size()];
}

void BackwardOrbit::validate(const PLMap& f) const {
  const std::uint64_t span = prefix_.size() + block_.size();
  for (std::uint64_t i = 0; i < span; ++i) {
    const Rational image = f.eval(at(i + 1));
    if (image != at(i))
      fail(ErrorCode::invalid_orbit, "f(x_" + std::to_string(i + 1) + ") = " + image.str() + " but x_" +
                                         std::to_string(i) + " = " + at(i).str());
  }
}

bool BackwardOrbit::is_valid_for(const PLMap& f) const {
  try {
    validate(f);
    return true;
  } catch (const Error&) {
    return false;
  }
}

std::string BackwardOrbit::str() const {
  std::string out = "prefix:";
  for (const auto& q : prefix_) out += " " + q.str();
  out += " ; period:";
  for (const auto& q : block_) out += " " + q.str();
  return out;
}

}  // namespace pliml
