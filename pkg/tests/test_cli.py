"""
命令行测试

使用 click 的 CliRunner 测试各子命令的输出与退出码
"""

import json

import numpy as np
import pytest
from click.testing import CliRunner

from spectral_dk import __version__
from spectral_dk.cli import cli
from spectral_dk.core.constants import ExitCode, ReportSchema

LADDER = np.diag([0.0, 1.0, 2.0, 3.0])


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def invoke(runner):
    """在测试环境配置下调用命令行"""
    def _invoke(*args):
        return runner.invoke(cli, ['--env', 'testing', *[str(arg) for arg in args]])

    return _invoke


@pytest.fixture
def ladder_file(write_matrix_file):
    return write_matrix_file("ladder.txt", LADDER)


class TestCompare:
    """compare 子命令测试类"""

    def test_identity_on_same_matrix(self, invoke, ladder_file):
        result = invoke('compare', ladder_file, ladder_file, '--r', 2)
        assert result.exit_code == ExitCode.SUCCESS
        payload = json.loads(result.stdout)
        assert payload['schema'] == ReportSchema.VERSION
        assert payload['constraints_ok'] is True
        assert payload['bound'] == 0.0
        assert payload['transform']['coefficients'] == [0.0, 1.0]

    def test_explicit_affine_and_norm(self, invoke, ladder_file):
        result = invoke('compare', ladder_file, ladder_file, '--j', 1, '--r', 2,
                        '--c1', 1, '--c0', 0.1, '--norm', 'rho2')
        assert result.exit_code == ExitCode.SUCCESS
        payload = json.loads(result.stdout)
        assert payload['norm_kind'] == 'rho2'
        assert payload['bound'] == pytest.approx(0.1 / 0.9)

    def test_write_report_to_file(self, invoke, ladder_file, tmp_path):
        out = tmp_path / "reports" / "compare.json"
        result = invoke('compare', ladder_file, ladder_file, '--r', 1, '--out', out)
        assert result.exit_code == ExitCode.SUCCESS
        assert json.loads(out.read_text(encoding='utf-8'))['r'] == 1

    def test_shape_mismatch(self, invoke, ladder_file, write_matrix_file):
        small = write_matrix_file("small.txt", np.eye(3))
        result = invoke('compare', small, ladder_file, '--r', 1)
        assert result.exit_code == ExitCode.INPUT_ERROR
        assert 'ShapeError' in result.output

    def test_degenerate_transform(self, invoke, ladder_file):
        result = invoke('compare', ladder_file, ladder_file, '--r', 1, '--c1', 0)
        assert result.exit_code == ExitCode.INPUT_ERROR
        assert 'DegenerateTransform' in result.output

    def test_missing_file(self, invoke, ladder_file, tmp_path):
        result = invoke('compare', tmp_path / "missing.txt", ladder_file, '--r', 1)
        assert result.exit_code == ExitCode.INPUT_ERROR
        assert 'ParseError' in result.output

    def test_search_conflicts_with_explicit_transform(self, invoke, ladder_file):
        result = invoke('compare', ladder_file, ladder_file, '--r', 1, '--search-affine', '--c1', 2)
        assert result.exit_code == ExitCode.INPUT_ERROR

    def test_no_valid_interval_still_reports(self, invoke, ladder_file):
        result = invoke('compare', ladder_file, ladder_file, '--j', 1, '--r', 2, '--c1', -1)
        assert result.exit_code == ExitCode.INFEASIBLE
        assert '"constraints_ok": false' in result.output
        assert 'NoValidInterval' in result.output

    def test_search_affine(self, invoke, ladder_file):
        result = invoke('compare', ladder_file, ladder_file, '--j', 1, '--r', 2, '--search-affine',
                        '--grid-points', 11, '--refinement-rounds', 1)
        assert result.exit_code == ExitCode.SUCCESS
        payload = json.loads(result.stdout)
        assert payload['bound'] == pytest.approx(0.0, abs=1e-12)
        assert payload['search']['per_choice_best'].keys() == {'1', '2'}
        assert len(payload['search']['history']) == 2


class TestFeasibility:
    """feasibility 子命令测试类"""

    def test_equal_matrices_feasible(self, invoke, ladder_file):
        result = invoke('feasibility', ladder_file, ladder_file, '--j', 1, '--r', 2)
        assert result.exit_code == ExitCode.SUCCESS
        payload = json.loads(result.stdout)
        assert payload['gap_assumption'] is True
        assert payload['standard_feasible'] is True
        assert payload['feasible'] is True

    def test_gapless_spectrum(self, invoke, write_matrix_file):
        path = write_matrix_file("gapless.txt", np.diag([0.0, 1.0, 1.0, 3.0]))
        result = invoke('feasibility', path, path, '--j', 1, '--r', 1)
        assert result.exit_code == ExitCode.INFEASIBLE
        payload = json.loads(result.stdout)
        assert payload['gap_assumption'] is False
        assert payload['reasons'] == ['GapViolation']

    def test_affine_rescues_opposite_ends(self, invoke, tmp_path):
        out_dir = tmp_path / "operators"
        assert invoke('export-operators', '--n', 30, '--d', 6, '--seed', 7,
                      '--out-dir', out_dir).exit_code == ExitCode.SUCCESS
        result = invoke('feasibility', out_dir / 'A.txt', out_dir / 'L.txt', '--j', 27, '--r', 3,
                        '--j-psi', 0, '--search-affine')
        assert result.exit_code == ExitCode.SUCCESS
        payload = json.loads(result.stdout)
        assert payload['standard_feasible'] is False
        assert payload['affine_feasible'] is True


class TestExportOperators:
    """export-operators 子命令测试类"""

    def test_random_regular(self, invoke, tmp_path):
        out_dir = tmp_path / "graph"
        result = invoke('export-operators', '--n', 30, '--d', 6, '--seed', 7, '--out-dir', out_dir)
        assert result.exit_code == ExitCode.SUCCESS
        payload = json.loads(result.stdout)
        assert payload['n'] == 30
        assert payload['regular_degree'] == 6
        for name in ('A.txt', 'L.txt', 'L_sym.txt', 'edges.txt'):
            assert (out_dir / name).exists()

    def test_from_edge_list(self, invoke, tmp_path):
        edges = tmp_path / "path.txt"
        edges.write_text("n 3\n0 1\n1 2\n", encoding='utf-8')
        result = invoke('export-operators', '--edges', edges, '--out-dir', tmp_path / "out")
        assert result.exit_code == ExitCode.SUCCESS
        assert json.loads(result.stdout)['regular_degree'] is None

    def test_isolated_node(self, invoke, tmp_path):
        edges = tmp_path / "isolated.txt"
        edges.write_text("n 3\n0 1\n", encoding='utf-8')
        result = invoke('export-operators', '--edges', edges, '--out-dir', tmp_path / "out")
        assert result.exit_code == ExitCode.INPUT_ERROR
        assert 'DegreeZero' in result.output

    def test_requires_graph_source(self, invoke, tmp_path):
        result = invoke('export-operators', '--out-dir', tmp_path / "out")
        assert result.exit_code == ExitCode.INPUT_ERROR

    def test_exported_operators_compare(self, invoke, tmp_path):
        out_dir = tmp_path / "graph"
        invoke('export-operators', '--n', 30, '--d', 6, '--seed', 7, '--out-dir', out_dir)
        result = invoke('compare', out_dir / 'L.txt', out_dir / 'L_sym.txt', '--r', 3, '--search-affine')
        assert result.exit_code == ExitCode.SUCCESS
        payload = json.loads(result.stdout)
        assert payload['bound'] <= 1e-8
        assert payload['transform']['coefficients'][1] == pytest.approx(1.0 / 6.0, rel=1e-6)


class TestDregExperiment:
    """dreg-experiment 子命令测试类"""

    ARGS = ('dreg-experiment', '--n', 40, '--d', 6, '--replicates', 2, '--seed', 11)

    def test_csv_is_byte_identical_across_runs(self, invoke, tmp_path):
        first = invoke(*self.ARGS, '--out', tmp_path / "first.csv")
        second = invoke(*self.ARGS, '--out', tmp_path / "second.csv")
        assert first.exit_code == second.exit_code == ExitCode.SUCCESS
        assert (tmp_path / "first.csv").read_bytes() == (tmp_path / "second.csv").read_bytes()
        assert (tmp_path / "first.summary.json").exists()
        header = (tmp_path / "first.csv").read_text(encoding='utf-8').splitlines()[0]
        assert header == ",".join(ReportSchema.CSV_COLUMNS)

    def test_json_summary_to_stdout(self, invoke):
        result = invoke(*self.ARGS, '--format', 'json')
        assert result.exit_code == ExitCode.SUCCESS
        payload = json.loads(result.stdout)
        assert payload['replicates'] == 2
        assert payload['ext_feasible'] == 2

    def test_invalid_parameters(self, invoke):
        result = invoke('dreg-experiment', '--n', 5, '--d', 3)
        assert result.exit_code == ExitCode.INPUT_ERROR


class TestLandscape:
    """landscape 子命令测试类"""

    def test_csv_grid(self, invoke, ladder_file):
        result = invoke('landscape', ladder_file, ladder_file, '--j', 1, '--r', 2,
                        '--grid-points', 5, '--refinement-rounds', 0)
        assert result.exit_code == ExitCode.SUCCESS
        lines = result.stdout.splitlines()
        assert lines[0] == ",".join(ReportSchema.LANDSCAPE_COLUMNS)
        assert len(lines) == 1 + 25

    def test_json_grid(self, invoke, ladder_file):
        result = invoke('landscape', ladder_file, ladder_file, '--j', 1, '--r', 2,
                        '--grid-points', 5, '--format', 'json')
        assert result.exit_code == ExitCode.SUCCESS
        payload = json.loads(result.stdout)
        assert payload['config']['grid_points'] == 5
        assert len(payload['cells']) == 25
        assert any(cell['feasible'] for cell in payload['cells'])


class TestGroup:
    """命令组测试类"""

    def test_version(self, runner):
        result = runner.invoke(cli, ['--version'])
        assert result.exit_code == 0
        assert __version__ in result.output

    def test_usage_error(self, invoke):
        result = invoke('compare')
        assert result.exit_code == 2
