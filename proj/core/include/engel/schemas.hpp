#pragma once

namespace engel::schemas {

// Structural schemas for the machine-readable outputs. The validator in
// json_io understands type / properties / required / items / enum.

inline constexpr const char* kExpand = R"({
  "type": "object",
  "required": ["x", "depth", "digits", "cylinder", "checks"],
  "properties": {
    "x": {"type": "string"},
    "depth": {"type": "integer"},
    "digits": {"type": "array", "items": {"type": "string"}},
    "cylinder": {
      "type": "object",
      "required": ["left", "right", "length", "log_length"],
      "properties": {
        "left": {"type": ["string", "null"]},
        "right": {"type": ["string", "null"]},
        "length": {"type": ["string", "null"]},
        "log_length": {"type": "number"}
      }
    },
    "checks": {
      "type": "object",
      "required": ["residual_nonnegative", "residual_within_length"],
      "properties": {
        "residual_nonnegative": {"type": "boolean"},
        "residual_within_length": {"type": "boolean"}
      }
    }
  }
})";

inline constexpr const char* kFamily = R"({
  "type": "object",
  "required": ["family", "a", "K", "search_cap", "thresholds", "values",
               "provenance", "counts"],
  "properties": {
    "family": {"type": "string"},
    "a": {"type": "integer"},
    "K": {"type": "integer"},
    "search_cap": {"type": "integer"},
    "thresholds": {"type": "array", "items": {"type": "string"}},
    "values": {"type": "array", "items": {"type": "string"}},
    "provenance": {
      "type": "array",
      "items": {
        "type": "object",
        "required": ["value", "k", "f", "t"],
        "properties": {
          "value": {"type": "string"},
          "k": {"type": "integer"},
          "f": {"type": "string"},
          "t": {"type": "string"}
        }
      }
    },
    "counts": {
      "type": "object",
      "required": ["N", "c", "ok"],
      "properties": {
        "N": {"type": "integer"},
        "c": {"type": "array", "items": {"type": "integer"}},
        "ok": {"type": "boolean"},
        "first_fail": {"type": "integer"}
      }
    }
  }
})";

inline constexpr const char* kMergedPoint = R"({
  "type": "object",
  "required": ["a", "seed", "depth", "source_digits", "inserted", "merged",
               "value"],
  "properties": {
    "a": {"type": "integer"},
    "seed": {"type": "integer"},
    "depth": {"type": "integer"},
    "source_digits": {"type": "array", "items": {"type": "string"}},
    "inserted": {"type": "array", "items": {"type": "string"}},
    "merged": {"type": "array", "items": {"type": "string"}},
    "value": {"type": ["string", "null"]}
  }
})";

inline constexpr const char* kConstruct = R"({
  "type": "object",
  "required": ["family", "a", "K", "depth", "seed", "search_cap", "pattern",
               "point", "containment", "checks"],
  "properties": {
    "family": {"type": "string"},
    "a": {"type": "integer"},
    "K": {"type": "integer"},
    "depth": {"type": "integer"},
    "seed": {"type": "integer"},
    "search_cap": {"type": "integer"},
    "pattern": {"type": "object"},
    "point": {"type": "object"},
    "containment": {
      "type": "object",
      "required": ["ok", "witnesses"],
      "properties": {
        "ok": {"type": "boolean"},
        "witnesses": {"type": "array", "items": {"type": "object"}}
      }
    },
    "checks": {"type": "object"}
  }
})";

inline constexpr const char* kDetect = R"({
  "type": "object",
  "required": ["query", "parameters", "found", "witness", "bound_searched"],
  "properties": {
    "query": {"type": "string",
              "enum": ["density", "ap", "gp", "translate", "scale", "power"]},
    "parameters": {"type": "object"},
    "found": {"type": "boolean"},
    "witness": {"type": ["object", "array", "string", "null"]},
    "bound_searched": {"type": ["string", "null"]}
  }
})";

inline constexpr const char* kManifest = R"({
  "type": "object",
  "required": ["command", "parameters", "version", "output_digest"],
  "properties": {
    "command": {"type": "string"},
    "parameters": {"type": "object"},
    "version": {"type": "string"},
    "output_digest": {"type": "string"}
  }
})";

inline constexpr const char* kVerifyAll = R"({
  "type": "object",
  "required": ["checks", "all_pass"],
  "properties": {
    "checks": {
      "type": "array",
      "items": {
        "type": "object",
        "required": ["name", "pass"],
        "properties": {
          "name": {"type": "string"},
          "pass": {"type": "boolean"},
          "detail": {"type": "string"}
        }
      }
    },
    "all_pass": {"type": "boolean"}
  }
})";

} // namespace engel::schemas
