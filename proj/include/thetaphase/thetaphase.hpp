#pragma once

#include "thetaphase/coherent.hpp"
#include "thetaphase/common.hpp"
#include "thetaphase/gridio.hpp"
#include "thetaphase/hilbert.hpp"
#include "thetaphase/hwgroup.hpp"
#include "thetaphase/parallel.hpp"
#include "thetaphase/qbridge.hpp"
#include "thetaphase/theta.hpp"
#include "thetaphase/version.hpp"
#include "thetaphase/wigner.hpp"
