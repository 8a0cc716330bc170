from functools import partial

from malcev.algebra import (
    check_identity,
    is_alternative,
    is_anticommutative,
    is_associative,
    is_lie,
    is_malcev,
)
from malcev.exceptions import MalcevException


class MalcevChecks:
    '''
    The holder which houses any identity check registered with the system.
    This object is used in a singleton manner to save and load particular
    named check functions for reference externally.
    '''

    def __init__(self):
        self._checks = {}

    def register(self, name, check):
        self._checks[name] = check

    def names(self):
        return sorted(self._checks)

    def find_check(self, name):
        if name in self._checks:
            return self._checks[name]
        raise MalcevException(f"No identity check named '{name}' (known: {', '.join(self.names())})")

    def run(self, name, a):
        """Run a named check; the result is an IdentityWitness."""
        return self.find_check(name)(a)


malcev_checks = MalcevChecks()
malcev_checks.register('anticomm', is_anticommutative)
malcev_checks.register('malcev', is_malcev)
malcev_checks.register('lie', is_lie)
malcev_checks.register('associative', is_associative)
malcev_checks.register('alternative', is_alternative)
for _name in ('id1', 'id2', 'id3', 'id4', 'id5'):
    malcev_checks.register(_name, partial(check_identity, which=_name))
