#pragma once

#include "sideways/error.hpp"
#include "sideways/fuzz.hpp"
#include "sideways/generators.hpp"
#include "sideways/machine.hpp"
#include "sideways/program.hpp"
#include "sideways/reference.hpp"
#include "sideways/report.hpp"
#include "sideways/theory.hpp"
#include "sideways/word.hpp"
