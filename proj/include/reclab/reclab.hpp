#pragma once

#include "reclab/error.hpp"
#include "reclab/fgl.hpp"
#include "reclab/generators.hpp"
#include "reclab/linalg.hpp"
#include "reclab/lubin_tate.hpp"
#include "reclab/padic.hpp"
#include "reclab/report.hpp"
#include "reclab/residue.hpp"
#include "reclab/sampling.hpp"
#include "reclab/symbol.hpp"
#include "reclab/tower.hpp"
#include "reclab/tower_io.hpp"
#include "reclab/suites.hpp"
