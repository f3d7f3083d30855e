#ifndef DDSFC_DDSFC_HPP
#define DDSFC_DDSFC_HPP

#include "ddsfc/types.hpp"
#include "ddsfc/field.hpp"
#include "ddsfc/grid_graph.hpp"
#include "ddsfc/dual_graph.hpp"
#include "ddsfc/mst.hpp"
#include "ddsfc/cycle.hpp"
#include "ddsfc/regular2d.hpp"
#include "ddsfc/regular3d.hpp"
#include "ddsfc/pyramid.hpp"
#include "ddsfc/tree.hpp"
#include "ddsfc/hampath.hpp"
#include "ddsfc/multiscale.hpp"
#include "ddsfc/baselines.hpp"
#include "ddsfc/eval.hpp"
#include "ddsfc/synthetic.hpp"
#include "ddsfc/io.hpp"
#include "ddsfc/pipeline.hpp"

#endif // DDSFC_DDSFC_HPP
