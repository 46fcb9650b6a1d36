#ifndef ITFKIT_PML_HPP
#define ITFKIT_PML_HPP

// Textual platform models (.pml).
//
//   model       = "platform" IDENT "{" { item } "}"
//   item        = atomic | composite | link | symmetry | application
//   atomic      = role IDENT [ "{" { attr } "}" ] ";"
//   role        = "initiator" | "target" | "transporter"
//   composite   = "composite" IDENT "{" { atomic | composite | link } "}"
//   attr        = "service" IDENT { "," IDENT } ";"
//               | "capacity" NUMBER "Bps" ";"
//               | "class" ("cots"|"cots_soft_ip"|"cots_hard_ip"|"custom")
//                         ("simple"|"complex") [ STRING ] ";"
//               | "accelerator" ("tightly_coupled"|"passive"|"semi_active"|"active")
//                               ("unitary" | "parallel" NUMBER) ";"
//   link        = "link" QID "->" QID ";"
//   symmetry    = "symmetry" IDENT "{" QID { "," QID } "}"
//   application = "application" IDENT "{" { txn } "}"
//   txn         = "transaction" IDENT ":" QID { "->" QID }
//                 "uses" IDENT [ "rate" NUMBER "/s" ] [ "size" NUMBER "B" ] ";"
//   QID         = IDENT { "." IDENT }
//
// Comments run from "//" to end of line. Keywords are contextual. A QID in a
// link inside a composite resolves innermost scope first, then outwards;
// everywhere else QIDs are absolute.

#include <string>
#include <string_view>

#include "itfkit/diagnostic.hpp"
#include "itfkit/platform.hpp"

namespace itfkit {

// Parses and validates. On success the platform passes validate_platform.
Result<Platform> parse(std::string_view text, std::string_view file = "<input>");

// Reads a file and parses it. I/O failures are reported as E_IO.
Result<Platform> parse_file(const std::string& path);

// Canonical text: declarations sorted by name, two-space indentation, links
// with fully qualified endpoints, all links at top level.
// Throws Error(E_NOT_VALIDATED) when p is not valid.
std::string render(const Platform& p);

// Renders one atomic or composite declaration (and its children) at the
// given indentation depth. Used for fragment output.
std::string render_component(const Component& c, int depth);
std::string render_link(const Link& link);
std::string render_symmetry(const SymmetryClass& sc);
std::string render_transaction(const Transaction& t);

}  // namespace itfkit

#endif  // ITFKIT_PML_HPP
