# (c) 2026, cavity-modes contributors
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)
#
# You should have received a copy of the GNU General Public License
# along with Ansible.  If not, see <http://www.gnu.org/licenses/>.
#
from __future__ import (absolute_import, division, print_function)
__metaclass__ = type

from ansible.errors import AnsibleError


class CavityModesError(AnsibleError):
    ''' base class for every error raised by the cavity_modes library '''

    exit_code = 3


class DomainError(CavityModesError):
    pass


class BracketingError(CavityModesError):
    pass


class TruncationError(CavityModesError):
    pass


class SolverError(CavityModesError):
    pass


class OutsideDomainError(CavityModesError):
    pass


class BoundaryProximityError(CavityModesError):
    pass


class ConfigError(CavityModesError):

    exit_code = 2


class SelectorError(ConfigError):

    def __init__(self, message, candidates=None):
        self.candidates = list(candidates or [])
        if self.candidates:
            message = '%s; candidates: %s' % (message, ', '.join(self.candidates))
        super(SelectorError, self).__init__(message)
