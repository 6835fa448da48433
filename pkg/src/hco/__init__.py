"""Human challenge oracle: identity-bound, time-limited challenges.

Subpackages:
    protocol   -- challenge issuance/verification state machine and binding tags
    families   -- pluggable challenge families (perceptual, reasoning, attention)
    registry   -- per-window activity ledgers and series metrics
    service    -- HTTP oracle service with an append-only event log
    simulator  -- discrete-time Sybil adversary simulator and cost analyses
    cli        -- command-line entry points
"""

__version__ = "0.1.0"
