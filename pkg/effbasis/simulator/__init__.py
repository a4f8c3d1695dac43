from effbasis.simulator.statevector import (
    configuration_amplitudes,
    expectation,
    particle_number_variance,
    simulate,
    state_overlap,
    transition_elements,
)

__all__ = [
    "configuration_amplitudes",
    "expectation",
    "particle_number_variance",
    "simulate",
    "state_overlap",
    "transition_elements",
]
