#pragma once

namespace tropjac {

/// Size guards for the exhaustive searches. The CLI may raise them once at
/// startup; library code only reads them.
struct Limits {
  int subset_vertices = 16;   // 2^|V| subset scans
  int enumeration_edges = 16; // 2^|E| edge-subset scans
};

inline Limits& limits() {
  static Limits l;
  return l;
}

}  // namespace tropjac
