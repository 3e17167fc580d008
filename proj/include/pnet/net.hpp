#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pnet {

enum class Kind : std::uint8_t { Var, One, Bot, Coweak, Weak, Tensor, Par, Bang, Quest, Port };

const char* kind_name(Kind k);
bool is_leaf(Kind k);
bool is_positive_leaf(Kind k);  // One, Coweak
bool is_negative_leaf(Kind k);  // Bot, Weak
bool is_switched(Kind k);       // Par, Quest
bool is_multiplicative(Kind k); // Tensor, Bang

// A linear tree. Variables carry their own name; the dual of `x` is `x*`.
// `uid` is scratch identity used while rewriting and is ignored by ==.
struct Tree {
  Kind kind = Kind::Var;
  std::string name;  // atom label, or box id for ports
  int port = 0;      // port index, ports only
  std::vector<Tree> kids;
  int uid = -1;

  static Tree var(std::string n);
  static Tree leaf(Kind k, std::string n);
  static Tree node(Kind k, std::vector<Tree> kids);
  static Tree port_of(std::string box, int index);

  bool operator==(const Tree& o) const;
};

std::string dual_name(const std::string& var);

struct Addr {
  bool in_cut = false;
  int index = 0;     // 0-based conclusion or cut position
  bool right = false;
  std::vector<int> path;  // 1-based premise indices

  auto operator<=>(const Addr&) const = default;
  bool operator==(const Addr&) const = default;
};

std::string addr_string(const Addr& a);

struct Cut {
  Tree left, right;
};

struct Net {
  std::vector<Cut> cuts;
  std::vector<Tree> conclusions;
  std::map<std::string, Addr> jumps;
};

enum class Errc {
  DuplicateAtom,
  UnpairedVariable,
  MissingJump,
  BadJumpTarget,
  NullaryConnective,
  SyntaxError,
  NoSuchCut,
  NotReducible,
  EvanescentSelfJump,
  CyclicJumpChain,
  CapExceeded,
  NotMultiplicativeStep,
  CyclicInput,
  PortOutsideQuest,
  PortArityMismatch,
  JumpToAuxPort,
  JumpAcrossDepth,
  NotApplicable,
  NoProvenance,
  CyclicTarget,
  BudgetOverflow,
};

const char* errc_name(Errc e);

struct Issue {
  Errc code;
  std::string subject;
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg);
  Errc code() const { return code_; }

 private:
  Errc code_;
};

// All violations of the net invariants; empty means valid.
// Ports are tolerated here (MELL validation adds its own rules on top).
std::vector<Issue> validate_net(const Net& net);
void require_valid(const Net& net);

const Tree* resolve(const Net& net, const Addr& a);
const Tree& root_of(const Net& net, const Addr& a);

std::size_t size(const Tree& t);
std::size_t size(const Net& net);

struct JumpDegree {
  std::map<Addr, int> per_subtree;
  int max = 0;
};
JumpDegree jump_degree(const Net& net);

// Flattened view: one node per subtree, numbered in address order
// (conclusions first, then cuts left/right, preorder inside each tree).
struct Flat {
  struct Node {
    Kind kind;
    std::string name;
    int port = 0;
    std::vector<int> kids;
    int parent = -1;
    int child_index = 0;  // 1-based position below parent
    int root = -1;        // node id of the tree root
    Addr addr;
    int uid = -1;
  };
  std::vector<Node> nodes;
  std::vector<int> conclusion_roots;
  std::vector<std::pair<int, int>> cut_roots;
  std::map<std::string, int> atom;   // atom (or port "b#i") name -> node
  std::map<std::string, int> jump;   // negative leaf label -> target node
  std::vector<int> cut_of;           // node -> cut index or -1

  explicit Flat(const Net& net);
  int find(const Addr& a) const;
  int size() const { return static_cast<int>(nodes.size()); }
};

std::string port_key(const std::string& box, int index);

enum class CanonMode { Ordered, ExponentialMultiset };

// Canonical representative of the alpha-class. Cuts are a set, conclusions
// are ordered; in ExponentialMultiset mode premises of !/? are unordered too.
// `box_keys` lets MELL callers distinguish ports by the boxes they belong to.
Net canonicalize(const Net& net, CanonMode mode = CanonMode::Ordered,
                 const std::map<std::string, std::string>* box_keys = nullptr,
                 std::map<std::string, std::string>* box_rename = nullptr);
std::string canonical_key(const Net& net, CanonMode mode = CanonMode::Ordered);
bool alpha_equal(const Net& a, const Net& b, CanonMode mode = CanonMode::Ordered);

// Branch budget of the canonical-labelling search; past it ties are broken
// by first candidate.
inline constexpr std::size_t kCanonLeafCap = 4096;

}  // namespace pnet
