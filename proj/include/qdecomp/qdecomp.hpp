#pragma once

#include "qdecomp/census.hpp"
#include "qdecomp/decomp.hpp"
#include "qdecomp/emitters.hpp"
#include "qdecomp/errors.hpp"
#include "qdecomp/gate.hpp"
#include "qdecomp/matcore.hpp"
#include "qdecomp/matrix_io.hpp"
#include "qdecomp/optimizer.hpp"
#include "qdecomp/simulator.hpp"
#include "qdecomp/synthesis.hpp"
