#pragma once

#include "wildmck/errors.hpp"
#include "wildmck/qseries.hpp"
#include "wildmck/galois_field.hpp"
#include "wildmck/group_spec.hpp"
#include "wildmck/group_core.hpp"
#include "wildmck/vfun.hpp"
#include "wildmck/census.hpp"
#include "wildmck/mass.hpp"
#include "wildmck/oracle.hpp"
#include "wildmck/report.hpp"
