#pragma once

#include "qmor/characters.hpp"
#include "qmor/equality.hpp"
#include "qmor/exact_linalg.hpp"
#include "qmor/fd_algebra.hpp"
#include "qmor/fd_random.hpp"
#include "qmor/free_star.hpp"
#include "qmor/gaussian_rational.hpp"
#include "qmor/induced.hpp"
#include "qmor/mor_builder.hpp"
#include "qmor/presentation.hpp"
#include "qmor/presented_hom.hpp"
#include "qmor/rep_search.hpp"
#include "qmor/rewriting.hpp"
#include "qmor/structure_maps.hpp"
#include "qmor/text.hpp"
#include "qmor/workspace.hpp"
