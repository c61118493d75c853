#include "onlinekc/machine.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_set>

#include "onlinekc/hash.hpp"

namespace onlinekc {

std::string to_hex(std::uint64_t value) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = kDigits[value & 0xF];
    value >>= 4;
  }
  return out;
}

namespace {

struct Token {
  std::string text;
  std::size_t column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size()) break;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    tokens.push_back({std::string(line.substr(start, i - start)), start + 1});
  }
  return tokens;
}

// Expansion of one observation token; empty on a syntax error.
std::vector<Symbol> parse_obs(const std::string& t, bool stack) {
  if (t == "0") return {Symbol::zero};
  if (t == "1") return {Symbol::one};
  if (t == "_") return {Symbol::zero, Symbol::one, Symbol::boundary};
  if ((stack && t == "*") || (!stack && t == "$")) return {Symbol::boundary};
  return {};
}

std::optional<bool> parse_move(const std::string& t) {
  if (t == "stay") return false;
  if (t == "adv") return true;
  return std::nullopt;
}

std::optional<StackAction> parse_action(const std::string& t) {
  if (t == "none") return StackAction::none;
  if (t == "push0") return StackAction::push0;
  if (t == "push1") return StackAction::push1;
  if (t == "pop") return StackAction::pop;
  return std::nullopt;
}

std::optional<Emit> parse_emit(const std::string& t) {
  if (t == "none") return Emit::none;
  if (t == "0") return Emit::zero;
  if (t == "1") return Emit::one;
  return std::nullopt;
}

char obs_char(Symbol s, bool stack) {
  switch (s) {
    case Symbol::zero: return '0';
    case Symbol::one: return '1';
    default: return stack ? '*' : '$';
  }
}

struct RawTransition {
  std::size_t line;
  std::string state;
  std::array<std::vector<Symbol>, 4> obs;
  std::string next;
  Transition action;  // `next` filled after state numbering
};

}  // namespace

MachineLoadError::MachineLoadError(std::vector<std::string> problems)
    : std::runtime_error([&] {
        std::string msg = "invalid machine spec:";
        for (const auto& p : problems) msg += "\n  " + p;
        return msg;
      }()),
      problems_(std::move(problems)) {}

std::size_t MachineSpec::transition_count() const {
  return static_cast<std::size_t>(
      std::count_if(table_.begin(), table_.end(), [](const auto& t) { return t.has_value(); }));
}

std::uint64_t MachineSpec::fingerprint() const {
  Fnv1a h;
  h.add(std::uint64_t{state_names_.size()}).add(std::uint64_t{initial_}).add(std::uint64_t{halt_});
  for (std::size_t i = 0; i < table_.size(); ++i) {
    if (!table_[i]) continue;
    const auto& t = *table_[i];
    h.add(std::uint64_t{i}).add(std::uint64_t{t.next});
    h.add(std::uint64_t{t.advance_program} | (std::uint64_t{t.advance_input} << 1) |
          (static_cast<std::uint64_t>(t.stack1) << 2) | (static_cast<std::uint64_t>(t.stack2) << 4) |
          (static_cast<std::uint64_t>(t.emit) << 6));
  }
  return h.digest();
}

MachineSpec load_machine(std::string_view text) {
  std::vector<std::string> problems;
  std::vector<RawTransition> raw;
  std::optional<std::string> initial_name, halt_name;
  std::size_t initial_line = 0, halt_line = 0;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto tokens = tokenize(line);
    if (tokens.empty()) continue;

    auto where = [&](std::size_t column) {
      return "line " + std::to_string(line_no) + ", column " + std::to_string(column);
    };

    if (tokens[0].text == "initial" || tokens[0].text == "halt") {
      if (tokens.size() != 2) {
        problems.push_back(where(tokens[0].column) + ": syntax error: expected '" + tokens[0].text +
                           " <state>'");
        continue;
      }
      auto& slot = tokens[0].text == "initial" ? initial_name : halt_name;
      if (slot) {
        problems.push_back(where(tokens[0].column) + ": duplicate '" + tokens[0].text + "' header");
        continue;
      }
      slot = tokens[1].text;
      (tokens[0].text == "initial" ? initial_line : halt_line) = line_no;
      continue;
    }

    if (tokens.size() != 12 || tokens[5].text != "->") {
      problems.push_back(where(tokens[0].column) +
                         ": syntax error: expected 'state prog input top1 top2 -> next pmove imove "
                         "s1 s2 emit'");
      continue;
    }
    RawTransition r;
    r.line = line_no;
    r.state = tokens[0].text;
    bool ok = true;
    for (int i = 0; i < 4; ++i) {
      r.obs[i] = parse_obs(tokens[1 + i].text, i >= 2);
      if (r.obs[i].empty()) {
        problems.push_back(where(tokens[1 + i].column) + ": syntax error: bad observation '" +
                           tokens[1 + i].text + "'");
        ok = false;
      }
    }
    r.next = tokens[6].text;
    auto pm = parse_move(tokens[7].text);
    auto im = parse_move(tokens[8].text);
    auto a1 = parse_action(tokens[9].text);
    auto a2 = parse_action(tokens[10].text);
    auto em = parse_emit(tokens[11].text);
    if (!pm) problems.push_back(where(tokens[7].column) + ": syntax error: bad move '" + tokens[7].text + "'");
    if (!im) problems.push_back(where(tokens[8].column) + ": syntax error: bad move '" + tokens[8].text + "'");
    if (!a1) problems.push_back(where(tokens[9].column) + ": syntax error: bad stack action '" + tokens[9].text + "'");
    if (!a2) problems.push_back(where(tokens[10].column) + ": syntax error: bad stack action '" + tokens[10].text + "'");
    if (!em) problems.push_back(where(tokens[11].column) + ": syntax error: bad emit '" + tokens[11].text + "'");
    if (!ok || !pm || !im || !a1 || !a2 || !em) continue;
    r.action.advance_program = *pm;
    r.action.advance_input = *im;
    r.action.stack1 = *a1;
    r.action.stack2 = *a2;
    r.action.emit = *em;
    raw.push_back(std::move(r));
  }

  if (!initial_name) problems.push_back("missing 'initial <state>' header");
  if (!halt_name) problems.push_back("missing 'halt <state>' header");

  // Number states in order of first appearance.
  MachineSpec spec;
  std::map<std::string, std::uint32_t> ids;
  auto intern = [&](const std::string& name) {
    auto [it, inserted] = ids.emplace(name, static_cast<std::uint32_t>(spec.state_names_.size()));
    if (inserted) spec.state_names_.push_back(name);
    return it->second;
  };
  if (initial_name) spec.initial_ = intern(*initial_name);
  if (halt_name) spec.halt_ = intern(*halt_name);
  std::unordered_set<std::string> sources;
  for (const auto& r : raw) {
    intern(r.state);
    sources.insert(r.state);
  }
  for (const auto& r : raw) intern(r.next);

  // A state that is neither halting nor the source of any transition can only
  // come from a typo.
  auto known = [&](const std::string& name) { return name == halt_name || sources.count(name) > 0; };
  if (initial_name && !known(*initial_name)) {
    problems.push_back("line " + std::to_string(initial_line) + ": unknown state '" + *initial_name + "'");
  }
  for (const auto& r : raw) {
    if (!known(r.next)) {
      problems.push_back("line " + std::to_string(r.line) + ": unknown state '" + r.next + "'");
    }
  }
  (void)halt_line;

  spec.table_.assign(spec.state_names_.size() * MachineSpec::kObservations, std::nullopt);
  std::vector<std::size_t> defined_on(spec.table_.size(), 0);
  for (const auto& r : raw) {
    const std::uint32_t from = ids.at(r.state);
    if (halt_name && r.state == *halt_name) {
      problems.push_back("line " + std::to_string(r.line) + ": halting state '" + r.state +
                         "' has an outgoing transition");
      continue;
    }
    Transition t = r.action;
    t.next = ids.at(r.next);
    for (Symbol p : r.obs[0])
      for (Symbol in : r.obs[1])
        for (Symbol t1 : r.obs[2])
          for (Symbol t2 : r.obs[3]) {
            const Observation obs{p, in, t1, t2};
            const std::string tuple = r.state + " " + obs_char(p, false) + " " + obs_char(in, false) +
                                      " " + obs_char(t1, true) + " " + obs_char(t2, true);
            if ((t1 == Symbol::boundary && t.stack1 == StackAction::pop) ||
                (t2 == Symbol::boundary && t.stack2 == StackAction::pop)) {
              problems.push_back("line " + std::to_string(r.line) + ": pop on empty stack for '" +
                                 tuple + "'");
              continue;
            }
            const std::size_t slot = from * MachineSpec::kObservations + MachineSpec::index_of(obs);
            if (spec.table_[slot]) {
              problems.push_back("line " + std::to_string(r.line) + ": nondeterministic transition for '" +
                                 tuple + "' (also defined on line " + std::to_string(defined_on[slot]) + ")");
              continue;
            }
            spec.table_[slot] = t;
            defined_on[slot] = r.line;
          }
  }

  if (!problems.empty()) throw MachineLoadError(std::move(problems));
  return spec;
}

MachineSpec load_machine_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw MachineLoadError({"cannot open '" + path.string() + "'"});
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_machine(buf.str());
}

const char* to_string(RunStatus status) {
  switch (status) {
    case RunStatus::halted: return "halted";
    case RunStatus::space_exceeded: return "space_exceeded";
    case RunStatus::diverged: return "diverged";
  }
  return "?";
}

namespace {

// Key identifying (state, stack1, stack2). Head positions are not part of
// the key: the configuration set is cleared whenever a head advances, since
// heads never move back.
struct ConfigKey {
  std::vector<std::uint64_t> words;
  bool operator==(const ConfigKey&) const = default;
};

struct ConfigKeyHash {
  std::size_t operator()(const ConfigKey& k) const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (auto w : k.words) {
      h ^= w;
      h *= 1099511628211ULL;
      h ^= h >> 29;
    }
    return static_cast<std::size_t>(h);
  }
};

ConfigKey make_key(std::uint32_t state, const std::vector<std::uint8_t>& s1,
                   const std::vector<std::uint8_t>& s2) {
  ConfigKey key;
  key.words.reserve(1 + (s1.size() + s2.size() + 63) / 64);
  key.words.push_back(std::uint64_t{state} | (std::uint64_t{s1.size()} << 24) |
                      (std::uint64_t{s2.size()} << 44));
  std::uint64_t word = 0;
  int used = 0;
  auto put = [&](std::uint8_t b) {
    word |= std::uint64_t{b} << used;
    if (++used == 64) {
      key.words.push_back(word);
      word = 0;
      used = 0;
    }
  };
  for (auto b : s1) put(b);
  for (auto b : s2) put(b);
  if (used > 0) key.words.push_back(word);
  return key;
}

Symbol top_of(const std::vector<std::uint8_t>& stack) {
  return stack.empty() ? Symbol::boundary : static_cast<Symbol>(stack.back());
}

Symbol read_tape(const BitString& tape, std::size_t pos) {
  return pos < tape.size() ? static_cast<Symbol>(tape[pos]) : Symbol::boundary;
}

void apply(std::vector<std::uint8_t>& stack, StackAction action) {
  switch (action) {
    case StackAction::push0: stack.push_back(0); break;
    case StackAction::push1: stack.push_back(1); break;
    case StackAction::pop: stack.pop_back(); break;
    case StackAction::none: break;
  }
}

int delta(StackAction action) {
  switch (action) {
    case StackAction::push0:
    case StackAction::push1: return 1;
    case StackAction::pop: return -1;
    default: return 0;
  }
}

}  // namespace

RunResult run(const MachineSpec& machine, const BitString& program, const BitString& input,
              std::uint64_t space_cap) {
  RunResult result;
  std::uint32_t state = machine.initial();
  std::size_t prog_pos = 0;
  std::size_t input_pos = 0;
  std::vector<std::uint8_t> stack1, stack2;
  std::unordered_set<ConfigKey, ConfigKeyHash> seen;

  while (state != machine.halt()) {
    if (!seen.insert(make_key(state, stack1, stack2)).second) {
      result.status = RunStatus::diverged;
      result.repeat_step = result.steps;
      return result;
    }
    const Observation obs{read_tape(program, prog_pos), read_tape(input, input_pos), top_of(stack1),
                          top_of(stack2)};
    const Transition* t = machine.lookup(state, obs);
    if (t == nullptr) {
      // Stuck: the configuration maps to itself.
      result.status = RunStatus::diverged;
      result.repeat_step = result.steps + 1;
      return result;
    }
    const std::uint64_t size = stack1.size() + stack2.size();
    const std::int64_t next_size = static_cast<std::int64_t>(size) + delta(t->stack1) + delta(t->stack2);
    if (next_size > static_cast<std::int64_t>(space_cap)) {
      result.status = RunStatus::space_exceeded;
      return result;
    }
    apply(stack1, t->stack1);
    apply(stack2, t->stack2);
    result.max_space = std::max<std::uint64_t>(result.max_space, static_cast<std::uint64_t>(next_size));
    if (t->emit != Emit::none) result.output.push_back(t->emit == Emit::one ? 1 : 0);
    bool moved = false;
    if (t->advance_program && prog_pos < program.size()) {
      ++prog_pos;
      moved = true;
    }
    if (t->advance_input && input_pos < input.size()) {
      ++input_pos;
      moved = true;
    }
    if (moved) seen.clear();
    state = t->next;
    ++result.steps;
  }
  result.status = RunStatus::halted;
  return result;
}

std::uint64_t configuration_bound(const MachineSpec& machine, std::size_t program_length,
                                  std::size_t input_length, std::uint64_t space_cap) {
  constexpr std::uint64_t kMax = UINT64_MAX;
  auto mul = [](std::uint64_t a, std::uint64_t b) -> std::uint64_t {
    if (a != 0 && b > kMax / a) return kMax;
    return a * b;
  };
  std::uint64_t stacks = 0;
  for (std::uint64_t t = 0; t <= space_cap; ++t) {
    if (t >= 63) return kMax;
    const std::uint64_t term = mul(t + 1, std::uint64_t{1} << t);
    if (term == kMax || stacks > kMax - term) return kMax;
    stacks += term;
  }
  std::uint64_t bound = mul(machine.state_count(), program_length + 2);
  bound = mul(bound, input_length + 2);
  return mul(bound, stacks);
}

std::filesystem::path reference_machine_path() {
  return std::filesystem::path(ONLINEKC_MACHINE_DIR) / "reference.tm";
}

const MachineSpec& reference_machine() {
  static const MachineSpec spec = load_machine_file(reference_machine_path());
  return spec;
}

}  // namespace onlinekc
