#pragma once

/// Umbrella header for the scope-graph name-resolution and access-modifier
/// toolkit.

#include "aml/ast.hpp"
#include "aml/checker.hpp"
#include "aml/config.hpp"
#include "aml/conformance.hpp"
#include "aml/dot.hpp"
#include "aml/label.hpp"
#include "aml/parser.hpp"
#include "aml/policy.hpp"
#include "aml/printer.hpp"
#include "aml/regex.hpp"
#include "aml/scope_graph.hpp"
#include "aml/synthesis.hpp"
#include "aml/verify.hpp"
