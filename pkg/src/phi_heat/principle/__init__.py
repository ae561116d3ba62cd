from phi_heat.principle.envelope_trace                              import EnvelopeTrace
from phi_heat.principle.maximum_principle                           import MaximumPrinciple, OmoriYauCandidate
