#ifndef ERGM_ERGM_HPP
#define ERGM_ERGM_HPP

#include "ergm/dense_chain.hpp"
#include "ergm/entropy.hpp"
#include "ergm/errors.hpp"
#include "ergm/graph.hpp"
#include "ergm/graphon.hpp"
#include "ergm/io.hpp"
#include "ergm/logspace.hpp"
#include "ergm/mcmc.hpp"
#include "ergm/model.hpp"
#include "ergm/motif.hpp"
#include "ergm/rng.hpp"
#include "ergm/variational.hpp"

#endif
