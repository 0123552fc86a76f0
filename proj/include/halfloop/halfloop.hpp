#pragma once

#include "halfloop/abelian.hpp"
#include "halfloop/construction.hpp"
#include "halfloop/error.hpp"
#include "halfloop/halfmorph.hpp"
#include "halfloop/identities.hpp"
#include "halfloop/isomorphism.hpp"
#include "halfloop/loop_table.hpp"
#include "halfloop/nuclei.hpp"
#include "halfloop/perm.hpp"
#include "halfloop/structure.hpp"
#include "halfloop/subloops.hpp"
#include "halfloop/reference.hpp"
