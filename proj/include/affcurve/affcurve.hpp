#pragma once

#include <affcurve/affinity.hpp>
#include <affcurve/curve.hpp>
#include <affcurve/datasets.hpp>
#include <affcurve/disjoint_set.hpp>
#include <affcurve/errors.hpp>
#include <affcurve/io.hpp>
#include <affcurve/oracle_check.hpp>
#include <affcurve/partition.hpp>
#include <affcurve/random.hpp>
#include <affcurve/topology.hpp>
