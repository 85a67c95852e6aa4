# (c) 2026, cavity-modes contributors
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)

from __future__ import (absolute_import, division, print_function)
__metaclass__ = type

import json
import math

import pytest

from cavity_modes import config, transverse
from cavity_modes.errors import ConfigError


def test_spec_file_loads_with_custom_types():
    spec = config.load_spec()
    assert sorted(spec) == ['argument_spec', 'mutually_exclusive', 'required_if', 'required_one_of']
    assert spec['argument_spec']['a']['type'] is config.CUSTOM_TYPES['dimension']
    with pytest.raises(ConfigError):
        config.load_spec('/nonexistent/job_spec.yaml')


def test_defaults_and_pi_tokens():
    cfg = config.validate(dict(shape='cube', a='pi', lmax=10))
    assert cfg.a == math.pi
    assert cfg.length == math.pi
    assert cfg.walls == 'cond'
    assert cfg.backend == 'analytic'
    assert cfg.seed == 24301
    assert cfg.lam_max == 10.0
    assert cfg.k_max == pytest.approx(math.sqrt(10.0))
    assert config.validate(dict(shape='cube', a=1, h='pi/32')).h == math.pi / 32


def test_kmax_sets_the_eigenvalue_ceiling():
    cfg = config.validate(dict(shape='ball', R=1, kmax=3))
    assert cfg.lam_max == 9.0
    assert cfg.is_ball
    assert cfg.cross_section() is None


@pytest.mark.parametrize('params, message', [
    (dict(shape='cyl', R=1, lmax=5), 'missing'),
    (dict(shape='cube', a=1, lmax=5, kmax=2), 'mutually exclusive'),
    (dict(shape='cube', a=1, colour='red'), 'colour'),
    (dict(shape='cube', a=1, walls='open'), 'walls'),
    (dict(shape='cube', a='three'), 'a'),
])
def test_invalid_jobs(params, message):
    with pytest.raises(ConfigError) as exc:
        config.validate(params)
    assert message in str(exc.value)


def test_flags_override_the_config_file(tmp_path):
    path = tmp_path / 'job.json'
    path.write_text(u'{"shape": "cuboid", "a": 1, "b": 2, "l": "pi", "lmax": 5, "walls": "ins-ends"}')
    cfg = config.build_config(dict(a='2', b=None, walls=None, lmax=None), str(path))
    assert cfg.a == 2.0
    assert cfg.b == 2.0
    assert cfg.l == math.pi
    assert cfg.walls == 'ins-ends'
    assert cfg.lam_max == 5.0


def test_json_errors_name_the_position(tmp_path):
    path = tmp_path / 'broken.json'
    path.write_text(u'{"shape": "cube",\n "a": }\n')
    with pytest.raises(ConfigError) as exc:
        config.load_json(str(path))
    assert 'line 2 column 7' in str(exc.value)

    path.write_text(u'[1, 2]')
    with pytest.raises(ConfigError) as exc:
        config.load_json(str(path))
    assert 'JSON object' in str(exc.value)

    with pytest.raises(ConfigError):
        config.load_json(str(tmp_path / 'missing.json'))


def test_cross_sections():
    coax = config.validate(dict(shape='coax', r0=0.3, R=1, l=2)).cross_section()
    assert (coax.shape, coax.r0, coax.R) == (transverse.ANNULUS, 0.3, 1.0)

    grid = config.validate(dict(shape='cyl', R=1, l=2, backend='grid', h=0.125))
    assert grid.cross_section().shape == transverse.GRID
    assert grid.reference().shape == transverse.DISC

    with pytest.raises(ConfigError):
        config.validate(dict(shape='cyl', R=1, l=2, backend='grid')).cross_section()
    with pytest.raises(ConfigError):
        config.validate(dict(shape='coax', r0=2, R=1, l=2)).cross_section()
    with pytest.raises(ConfigError) as exc:
        config.validate(dict())
    assert 'shape' in str(exc.value)
    assert config.validate(dict(table='bessel')).shape is None


def test_grid_shape_reads_the_mask(tmp_path):
    path = tmp_path / 'square.mask'
    path.write_text(u'2 2 0.5\n..\n..\n')
    cfg = config.validate(dict(shape='grid', mask=str(path), l=1))
    cs = cfg.cross_section()
    assert cs.mask.size == 4
    assert cfg.reference() is None


def test_permittivity_needs_length_pi(tmp_path):
    path = tmp_path / 'eps.txt'
    path.write_text(u'1 1\n1 1\n')
    cfg = config.validate(dict(shape='cuboid', a='pi', b='pi', l=1, h='pi/2', eps=str(path)))
    with pytest.raises(ConfigError):
        cfg.permittivity(cfg.cross_section())

    cfg = config.validate(dict(shape='cuboid', a='pi', b='pi', l='pi', h='pi/2', eps=str(path)))
    eps = cfg.permittivity(cfg.cross_section())
    assert list(eps.cell_values) == [1.0] * 4

    disc = config.validate(dict(shape='cyl', R=1, l='pi', eps=str(path)))
    with pytest.raises(ConfigError):
        disc.permittivity(disc.cross_section())


def test_job_config_round_trip():
    cfg = config.validate(dict(shape='cube', a=2))
    data = cfg.to_dict()
    assert data['a'] == 2.0
    assert json.loads(json.dumps(data))['shape'] == 'cube'
    with pytest.raises(AttributeError):
        cfg.colour


def test_permittivity_needs_conducting_walls(tmp_path):
    path = tmp_path / 'eps.txt'
    path.write_text(u'1 1\n1 1\n')
    cfg = config.validate(dict(shape='cuboid', a='pi', b='pi', l='pi', h='pi/2', eps=str(path), walls='ins-ends'))
    with pytest.raises(ConfigError) as exc:
        cfg.permittivity(cfg.cross_section())
    assert 'conducting walls' in str(exc.value)
