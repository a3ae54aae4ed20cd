#ifndef BIUNIVALENT_BIUNIVALENT_HPP
#define BIUNIVALENT_BIUNIVALENT_HPP

#include <biunivalent/bounds.hpp>
#include <biunivalent/caratheodory.hpp>
#include <biunivalent/harness.hpp>
#include <biunivalent/operator.hpp>
#include <biunivalent/random.hpp>
#include <biunivalent/series.hpp>

#endif
