#ifndef ORDGAP_ORDGAP_HPP
#define ORDGAP_ORDGAP_HPP

#include <ordgap/error.hpp>
#include <ordgap/interval.hpp>
#include <ordgap/json_io.hpp>
#include <ordgap/loggap.hpp>
#include <ordgap/numerics.hpp>
#include <ordgap/ode_sum.hpp>
#include <ordgap/polynomial.hpp>
#include <ordgap/series.hpp>
#include <ordgap/slp.hpp>
#include <ordgap/sqtest.hpp>
#include <ordgap/ssr.hpp>
#include <ordgap/wronskian.hpp>

#endif // ORDGAP_ORDGAP_HPP
