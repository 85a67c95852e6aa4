# (c) 2026, cavity-modes contributors
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)
#
# You should have received a copy of the GNU General Public License
# along with Ansible.  If not, see <http://www.gnu.org/licenses/>.
#
from __future__ import (absolute_import, division, print_function)
__metaclass__ = type

from ansible.plugins.loader import PluginLoader

backend_loader = PluginLoader(
    'TransverseBackend',
    'cavity_modes.plugins.backend',
    None,
    'backend_plugins',
    required_base_class='TransverseBase'
)
