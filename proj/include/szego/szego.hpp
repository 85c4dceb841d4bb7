#pragma once

#include "szego/conserved.hpp"
#include "szego/experiments.hpp"
#include "szego/flow.hpp"
#include "szego/hankel.hpp"
#include "szego/hardy.hpp"
#include "szego/linalg.hpp"
#include "szego/report.hpp"
#include "szego/symbol.hpp"
