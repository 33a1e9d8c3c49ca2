#pragma once

#include "bordered/error.hpp"
#include "bordered/gf2.hpp"
#include "bordered/homalg.hpp"
#include "bordered/surface.hpp"
#include "bordered/strands.hpp"
#include "bordered/algebra_checks.hpp"
#include "bordered/modules.hpp"
#include "bordered/diagrams.hpp"
#include "bordered/report.hpp"
