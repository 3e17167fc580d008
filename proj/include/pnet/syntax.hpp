#pragma once

#include <string>
#include <string_view>

#include "pnet/mell.hpp"
#include "pnet/net.hpp"

namespace pnet {

// Concrete syntax:
//   net   ::= '(' [cut {',' cut}] ';' [tree {',' tree}] ')' [jumps]
//   cut   ::= '<' tree '|' tree '>'
//   tree  ::= x | x* | 1@l | bot@m | !0@l | ?0@m | port(b,i)
//           | tensor(t,...) | par(t,...) | bang(t,...) | quest(t,...)
//   jumps ::= 'jumps' '{' [m '->' addr {',' m '->' addr}] '}'
//   addr  ::= tK{.i} | cK.L{.i} | cK.R{.i}
//   mell  ::= {box} net      box ::= 'box' b 'arity' N '{' {box} net '}'
// '#' starts a comment running to the end of the line.

std::string print_tree(const Tree& t);
std::string print_net(const Net& net);
std::string print_mell(const MellNet& m);

Net parse_net(std::string_view text);
MellNet parse_mell(std::string_view text);
Tree parse_tree(std::string_view text);
Addr parse_addr(std::string_view text);

}  // namespace pnet
