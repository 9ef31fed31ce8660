#include <algorithm>
#include <stdexcept>

#include "json.hpp"
#include "reductions/reductions.hpp"

namespace fsr {

void Dtm::validate() const {
  if (states.empty()) throw std::invalid_argument("dtm: no states");
  if (symbols.empty()) throw std::invalid_argument("dtm: no symbols");
  if (accept < 0 || accept >= static_cast<int>(states.size())) throw std::invalid_argument("dtm: bad accept state");
  for (const auto& [key, rule] : delta) {
    auto [q, y] = key;
    if (q < 0 || q >= static_cast<int>(states.size()) || y < 0 || y >= static_cast<int>(symbols.size()))
      throw std::invalid_argument("dtm: rule key out of range");
    if (q == accept) throw std::invalid_argument("dtm: the accept state must halt");
    if (rule.next < 0 || rule.next >= static_cast<int>(states.size()) || rule.write < 0 ||
        rule.write >= static_cast<int>(symbols.size()) || (rule.dir != -1 && rule.dir != 1))
      throw std::invalid_argument("dtm: rule for (" + states[static_cast<std::size_t>(q)] + ", " +
                                  symbols[static_cast<std::size_t>(y)] + ") is malformed");
  }
}

Dtm parse_dtm(const std::string& json_text) {
  using nlohmann::json;
  json j = json::parse(json_text);
  Dtm m;
  m.states = j.at("states").get<std::vector<std::string>>();
  std::string blank = j.at("blank").get<std::string>();
  m.symbols.push_back(blank);
  for (auto& s : j.at("symbols").get<std::vector<std::string>>())
    if (s != blank) m.symbols.push_back(s);
  auto index_of = [](const std::vector<std::string>& v, const std::string& s, const char* what) {
    auto it = std::find(v.begin(), v.end(), s);
    if (it == v.end()) throw std::invalid_argument(std::string("dtm: unknown ") + what + " '" + s + "'");
    return static_cast<int>(it - v.begin());
  };
  m.accept = index_of(m.states, j.at("accept").get<std::string>(), "state");
  for (const auto& r : j.at("delta")) {
    int q = index_of(m.states, r.at("state").get<std::string>(), "state");
    int y = index_of(m.symbols, r.at("read").get<std::string>(), "symbol");
    Dtm::Rule rule{};
    rule.next = index_of(m.states, r.at("next").get<std::string>(), "state");
    rule.write = index_of(m.symbols, r.at("write").get<std::string>(), "symbol");
    std::string mv = r.at("move").get<std::string>();
    if (mv == "L") rule.dir = -1;
    else if (mv == "R") rule.dir = 1;
    else throw std::invalid_argument("dtm: move must be L or R");
    if (!m.delta.emplace(std::make_pair(q, y), rule).second)
      throw std::invalid_argument("dtm: two rules for (" + m.states[static_cast<std::size_t>(q)] + ", " +
                                  m.symbols[static_cast<std::size_t>(y)] + ")");
  }
  m.validate();
  return m;
}

std::vector<int> encode_input(const Dtm& m, const std::string& input) {
  std::vector<int> out;
  for (char ch : input) {
    std::string s(1, ch);
    auto it = std::find(m.symbols.begin(), m.symbols.end(), s);
    if (it == m.symbols.end()) throw std::invalid_argument("input symbol '" + s + "' is not in the alphabet");
    out.push_back(static_cast<int>(it - m.symbols.begin()));
  }
  return out;
}

bool oracle_dtm_run(const Dtm& m, const std::vector<int>& x, int k) {
  if (k < 1 || static_cast<int>(x.size()) > k) return false;
  std::vector<int> tape(static_cast<std::size_t>(k), 0);
  std::copy(x.begin(), x.end(), tape.begin());
  std::uint64_t budget = m.states.size() * static_cast<std::uint64_t>(k);
  for (int i = 0; i < k; ++i) {
    budget *= m.symbols.size();
    if (budget > (1ull << 40)) break;
  }
  int q = 0;
  int head = 0;
  for (std::uint64_t t = 0;; ++t) {
    if (q == m.accept) return true;
    if (t >= budget) return false;
    auto it = m.delta.find({q, tape[static_cast<std::size_t>(head)]});
    if (it == m.delta.end()) return false;
    tape[static_cast<std::size_t>(head)] = it->second.write;
    q = it->second.next;
    head += it->second.dir;
    if (head < 0 || head >= k) return false;
  }
}

}  // namespace fsr
