#include "canopy/leaf_address.hpp"

#include <sstream>
#include <stdexcept>

namespace canopy {

LeafAddress LeafAddress::from_digits(std::vector<std::uint8_t> digits, int b) {
  if (b < 2) throw std::invalid_argument("branching factor must be >= 2");
  for (auto d : digits) {
    if (d >= b) throw std::invalid_argument("digit out of range for base b");
  }
  while (!digits.empty() && digits.back() == 0) digits.pop_back();
  LeafAddress a;
  a.digits_ = std::move(digits);
  return a;
}

std::string LeafAddress::to_string() const {
  if (digits_.empty()) return "0";
  std::ostringstream os;
  for (std::size_t i = 0; i < digits_.size(); ++i) {
    if (i) os << '.';
    os << static_cast<int>(digits_[i]);
  }
  return os.str();
}

LeafAddress LeafAddress::parse(const std::string& text, int b) {
  if (text == "0" || text.empty()) return LeafAddress{};
  std::vector<std::uint8_t> digits;
  std::istringstream is(text);
  std::string tok;
  while (std::getline(is, tok, '.')) {
    int v = std::stoi(tok);
    if (v < 0 || v >= b) throw std::invalid_argument("digit out of range for base b");
    digits.push_back(static_cast<std::uint8_t>(v));
  }
  return from_digits(std::move(digits), b);
}

std::size_t LeafAddress::Hash::operator()(const LeafAddress& a) const noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ULL;
  for (auto d : a.digits_) h = (h ^ d) * 0x100000001b3ULL;
  return h;
}

LeafAddress group_add(const LeafAddress& x, const LeafAddress& y, int b) {
  std::vector<std::uint8_t> out(std::max(x.digits().size(), y.digits().size()));
  for (std::size_t i = 0; i < out.size(); ++i) {
    int xi = i < x.digits().size() ? x.digits()[i] : 0;
    int yi = i < y.digits().size() ? y.digits()[i] : 0;
    out[i] = static_cast<std::uint8_t>((xi + yi) % b);
  }
  return LeafAddress::from_digits(std::move(out), b);
}

LeafAddress group_inverse(const LeafAddress& x, int b) {
  std::vector<std::uint8_t> out(x.digits().size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<std::uint8_t>((b - x.digits()[i]) % b);
  }
  return LeafAddress::from_digits(std::move(out), b);
}

int lca_height(const LeafAddress& x, const LeafAddress& y) {
  if (x == y) throw std::invalid_argument("lca_height requires distinct leaves");
  int k = 0;
  int top = std::max(x.ell(), y.ell());
  for (int i = 1; i <= top; ++i) {
    if (x.digit(i) != y.digit(i)) k = i;
  }
  return k;
}

std::uint64_t count_leaves_at_lca_height(int k, int b) {
  if (k < 1) throw std::invalid_argument("lca height must be >= 1");
  return static_cast<std::uint64_t>(b - 1) * pow_u64(static_cast<std::uint64_t>(b), k - 1);
}

std::uint64_t leaf_index(const LeafAddress& a, int n, int b) {
  if (a.ell() > n) throw std::invalid_argument("address does not fit in a height-n tree");
  std::uint64_t idx = 0;
  for (int i = a.ell(); i >= 1; --i) idx = idx * b + a.digit(i);
  return idx;
}

LeafAddress leaf_from_index(std::uint64_t index, int b) {
  std::vector<std::uint8_t> digits;
  while (index != 0) {
    digits.push_back(static_cast<std::uint8_t>(index % b));
    index /= b;
  }
  return LeafAddress::from_digits(std::move(digits), b);
}

int lca_height_index(std::uint64_t x, std::uint64_t y, int b) {
  if (x == y) throw std::invalid_argument("lca_height requires distinct leaves");
  int k = 0;
  while (x != y) {
    x /= b;
    y /= b;
    ++k;
  }
  return k;
}

}  // namespace canopy
