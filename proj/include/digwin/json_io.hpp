#pragma once

#include <string>

#include "digwin/window.hpp"

namespace digwin {

// Window serialization:
//   {"meta":{...string fields...},
//    "vertices":[{"id":0,"interior":true,"level":2,"label":"(0,1)"},...],
//    "edges":[[0,3],[1,4],...]}
// Vertices ascend by id, edges are sorted lexicographically, and object keys
// are emitted in sorted order, so writing is byte-deterministic and
// read(write(w)) == w exactly.
std::string write_window_json(const Window& w);
Window read_window_json(const std::string& text);

// FNV-1a over the canonical serialization; used to tag reports.
std::string window_hash(const Window& w);

}  // namespace digwin
