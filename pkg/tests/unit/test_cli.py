# (c) 2026, cavity-modes contributors
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)

from __future__ import (absolute_import, division, print_function)
__metaclass__ = type

import json

import pytest

from cavity_modes import __version__, cli
from cavity_modes.verify import CheckReport


def test_cube_table(capsys):
    assert cli.main(['spectrum', '--table', 'cube']) == cli.EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[:5] == ['2 (mult. 3)', '3 (mult. 2)', '5 (mult. 6)', '6 (mult. 6)', '8 (mult. 3)']
    assert lines[-1] == '26 (mult. 18)'


def test_bessel_table(capsys):
    assert cli.main(['spectrum', '--table', 'bessel']) == cli.EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 3
    assert lines[0] == "n=0 J: 2.404826 5.520078 8.653728 | J': 3.831706 7.015587 10.173468"
    assert lines[1].startswith('n=1 J: 3.831706 7.015587 10.173468 | J\': 1.841184')


def test_spectrum_csv(capsys):
    assert cli.main(['spectrum', '--shape', 'cube', '--a', 'pi', '--lmax', '3']) == cli.EXIT_OK
    out = capsys.readouterr().out
    assert out.splitlines()[0] == 'Lambda,k,multiplicity,family,indices'
    assert out.splitlines()[1].startswith('2,1.4142135623730951,3,TE+TM,')


def test_spectrum_from_config_file(tmp_path, capsys):
    path = tmp_path / 'job.json'
    path.write_text(u'{"shape": "coax", "r0": 0.3, "R": 1, "l": 2, "lmax": 3}')
    out = tmp_path / 'spectrum.json'
    code = cli.main(['spectrum', '--config', str(path), '--format', 'json', '--out', str(out)])
    assert code == cli.EXIT_OK
    assert capsys.readouterr().out == ''
    entries = json.loads(out.read_text())['entries']
    assert entries[0]['family'] == 'MAGNETOSTATIC'
    assert entries[1]['family'] == 'TEM'


def test_ball_spectrum(capsys):
    assert cli.main(['spectrum', '--shape', 'ball', '--R', '1', '--kmax', '3']) == cli.EXIT_OK
    rows = capsys.readouterr().out.splitlines()
    assert len(rows) == 2
    assert rows[1].split(',')[2:4] == ['3', 'NEUMANN']


def test_field_export(tmp_path):
    out = tmp_path / 'te.sgrid'
    code = cli.main(['field', '--shape', 'cube', '--a', 'pi', '--lmax', '3', '--select', 'TE:k1=1,k2=0,m=1',
                     '--grid', '2,2,2', '--out', str(out)])
    assert code == cli.EXIT_OK
    assert out.read_text().splitlines()[0] == 'DIMS 2 2 2'


def test_field_selector_errors_are_configuration_errors(capsys):
    code = cli.main(['field', '--shape', 'cube', '--a', 'pi', '--lmax', '3', '--select', 'TE:m=1'])
    assert code == 2
    assert 'candidates' in capsys.readouterr().err
    assert cli.main(['field', '--shape', 'cube', '--a', 'pi', '--lmax', '3']) == 2


def test_verify_passes_on_the_cube(capsys):
    assert cli.main(['verify', '--shape', 'cube', '--a', 'pi', '--modes', '6']) == cli.EXIT_OK
    document = json.loads(capsys.readouterr().out)
    assert document['passed'] is True
    assert document['seed'] == 24301
    assert all(check['passed'] for check in document['checks'])


def test_failed_check_exit_code(monkeypatch, capsys):
    monkeypatch.setattr(cli.verify, 'product_suite', lambda *args, **kwargs: [CheckReport('boundary', 1.0, 0.5, 1)])
    assert cli.main(['verify', '--shape', 'cube', '--a', 'pi']) == cli.EXIT_CHECK_FAILED
    assert json.loads(capsys.readouterr().out)['passed'] is False


def test_configuration_and_library_exit_codes():
    assert cli.main(['spectrum', '--shape', 'cyl', '--lmax', '5']) == 2
    assert cli.main(['spectrum', '--shape', 'cube', '--a', 'pi']) == 2
    assert cli.main(['spectrum', '--shape', 'cube', '--a', 'pi', '--lmax', '-1']) == 3


def test_version(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(['--version'])
    assert exc.value.code == 0
    assert __version__ in capsys.readouterr().out
