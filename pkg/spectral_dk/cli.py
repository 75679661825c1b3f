"""
命令行入口

子命令: compare, feasibility, dreg-experiment, landscape, export-operators
退出码: 0 成功, 1 输入错误, 2 不可行
"""

import functools
import json
import logging
from pathlib import Path

import click

from spectral_dk import __version__, create_context
from spectral_dk.config import ENVIRONMENT_NAMES
from spectral_dk.core.constants import ExitCode, NormKind, OutputFormat, ReportSchema
from spectral_dk.core.exceptions import (
    GapViolation,
    InvalidInput,
    NoFeasibleTransform,
    NoValidInterval,
    SpectralDKError
)
from spectral_dk.models.search import SearchConfig
from spectral_dk.models.transform import PolynomialTransform
from spectral_dk.services.bound_service import bound_service
from spectral_dk.services.experiment_service import experiment_service
from spectral_dk.services.graph_service import graph_service
from spectral_dk.services.io_service import io_service
from spectral_dk.services.linalg_service import linalg_service
from spectral_dk.services.search_service import search_service
from spectral_dk.services.transform_service import transform_service

logger = logging.getLogger(__name__)

_INFEASIBLE_ERRORS = (NoValidInterval, NoFeasibleTransform)

matrix_path = click.Path(exists=False, dir_okay=False, path_type=Path)


def _emit_error(error: SpectralDKError):
    click.echo(json.dumps(error.to_dict(), ensure_ascii=False, default=str), err=True)


def handle_errors(func):
    """领域异常转换为退出码；不可行时仍输出已有的报告"""
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        ctx = click.get_current_context()
        try:
            return func(*args, **kwargs)
        except _INFEASIBLE_ERRORS as e:
            report = getattr(e, 'report', None)
            if report is not None:
                click.echo(io_service.to_json(report.to_dict()))
            _emit_error(e)
            ctx.exit(ExitCode.INFEASIBLE)
        except SpectralDKError as e:
            _emit_error(e)
            ctx.exit(ExitCode.INPUT_ERROR)
    return wrapper


def _search_config(mat_phi, mat_psi, grid_points, refinement_rounds):
    """命令行覆盖网格点数与细化轮数，其余取默认搜索范围"""
    cfg = search_service.default_config(mat_phi, mat_psi)
    if grid_points is None and refinement_rounds is None:
        return cfg
    return SearchConfig(
        c1_range=cfg.c1_range,
        c0_range=cfg.c0_range,
        grid_points=grid_points if grid_points is not None else cfg.grid_points,
        refinement_rounds=refinement_rounds if refinement_rounds is not None else cfg.refinement_rounds,
        exclude_zero_band=cfg.exclude_zero_band,
        shrink_factor=cfg.shrink_factor,
    )


def _write_or_echo(text: str, out):
    if out is None:
        click.echo(text, nl=False)
        return
    out = Path(out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(text, encoding='utf-8')
    logger.info(f"已写出: {out}")


def block_options(func):
    """--j / --r / --j-psi 三个块参数"""
    func = click.option('--j-psi', 'j_psi', type=int, default=None,
                        help='Ψ 侧块偏移，默认等于 --j')(func)
    func = click.option('--r', 'r', type=int, required=True, help='块宽度')(func)
    func = click.option('--j', 'j', type=int, default=0, show_default=True, help='Φ 侧块偏移')(func)
    return func


def search_options(func):
    func = click.option('--refinement-rounds', type=int, default=None, help='细化轮数')(func)
    func = click.option('--grid-points', type=int, default=None, help='每轴网格点数')(func)
    return func


@click.group()
@click.version_option(__version__, prog_name='spectral-dk')
@click.option('--env', 'config_name', type=click.Choice(ENVIRONMENT_NAMES),
              default=None, help='配置环境，默认读取 SPECTRAL_DK_ENV')
@click.option('-v', '--verbose', count=True, help='提高日志级别 (-v INFO, -vv DEBUG)')
@click.pass_context
def cli(ctx, config_name, verbose):
    """扩展 Davis-Kahan 子空间距离界"""
    settings = create_context(config_name)
    if verbose:
        level = logging.DEBUG if verbose > 1 else logging.INFO
        logging.getLogger('spectral_dk').setLevel(level)
    ctx.obj = settings


# ============================================================================
# compare
# ============================================================================

@cli.command()
@click.argument('phi_file', type=matrix_path)
@click.argument('psi_file', type=matrix_path)
@block_options
@click.option('--c1', type=float, default=None, help='仿射变换斜率，默认 1')
@click.option('--c0', type=float, default=None, help='仿射变换截距，默认 0')
@click.option('--search-affine', is_flag=True, help='在 (c1, c0) 网格上搜索最优仿射变换')
@search_options
@click.option('--norm', 'norm_kind', type=click.Choice([item.value for item in NormKind]),
              default=NormKind.RHO1.value, show_default=True, help='报告主界使用的距离')
@click.option('--out', type=click.Path(dir_okay=False, path_type=Path), default=None,
              help='JSON 报告输出路径，默认输出到标准输出')
@click.pass_context
@handle_errors
def compare(ctx, phi_file, psi_file, j, r, j_psi, c1, c0, search_affine, grid_points,
            refinement_rounds, norm_kind, out):
    """计算 Φ 与 Ψ 特征向量块之间的扩展 DK 界"""
    mat_phi = io_service.read_matrix(phi_file)
    mat_psi = io_service.read_matrix(psi_file)

    if search_affine:
        if c1 is not None or c0 is not None:
            raise InvalidInput("--search-affine 不能与 --c1 / --c0 同时使用")
        cfg = _search_config(mat_phi, mat_psi, grid_points, refinement_rounds)
        result = search_service.search_affine(mat_phi, mat_psi, j, r, cfg=cfg, j_psi=j_psi,
                                              norm_kind=norm_kind)
        payload = result.best_report.to_dict()
        payload['search'] = result.to_dict()
    else:
        transform = PolynomialTransform.affine(1.0 if c1 is None else c1, 0.0 if c0 is None else c0)
        transform_service.require_affine(transform)
        payload = bound_service.extended_bound(mat_phi, mat_psi, transform, j, r, norm_kind=norm_kind,
                                               j_psi=j_psi).to_dict()

    _write_or_echo(io_service.to_json(payload) + "\n", out)


# ============================================================================
# feasibility
# ============================================================================

@cli.command()
@click.argument('phi_file', type=matrix_path)
@click.argument('psi_file', type=matrix_path)
@block_options
@click.option('--search-affine', is_flag=True, help='同时检查是否存在可行的仿射变换')
@search_options
@click.pass_context
@handle_errors
def feasibility(ctx, phi_file, psi_file, j, r, j_psi, search_affine, grid_points, refinement_rounds):
    """检查恒等变换（以及可选的仿射变换）下是否存在有效的 DK 区间"""
    mat_phi = io_service.read_matrix(phi_file)
    mat_psi = io_service.read_matrix(psi_file)
    j_psi = bound_service.resolve_offsets(mat_phi.n, mat_psi.n, j, r, j_psi)
    s_phi = linalg_service.eig_sym(mat_phi)
    s_psi = linalg_service.eig_sym(mat_psi)

    payload = {'n': mat_phi.n, 'j': j, 'j_psi': j_psi, 'r': r, 'reasons': []}
    gap_ok = bound_service.check_gap_assumption(s_phi, s_psi, j, r, j_psi=j_psi)
    payload['gap_assumption'] = gap_ok
    payload['standard_feasible'] = bound_service.standard_requirements_feasible(s_phi, s_psi, j, r, j_psi)
    if not gap_ok:
        payload['reasons'].append(GapViolation.__name__)

    feasible = payload['standard_feasible']
    if search_affine:
        payload['affine_feasible'] = False
        payload['affine'] = None
        if gap_ok:
            cfg = _search_config(mat_phi, mat_psi, grid_points, refinement_rounds)
            try:
                result = search_service.search_affine(mat_phi, mat_psi, j, r, cfg=cfg, j_psi=j_psi)
                payload['affine_feasible'] = True
                payload['affine'] = result.to_dict()
            except NoFeasibleTransform as e:
                payload['reasons'].append(e.__class__.__name__)
        feasible = feasible or payload['affine_feasible']

    payload['feasible'] = feasible
    click.echo(io_service.to_json(payload))
    if not feasible:
        ctx.exit(ExitCode.INFEASIBLE)


# ============================================================================
# dreg-experiment
# ============================================================================

@cli.command('dreg-experiment')
@click.option('--n', type=int, default=None, help='节点数，默认取配置')
@click.option('--d', type=int, default=None, help='度，默认取配置')
@click.option('--replicates', type=int, default=None, help='重复次数，默认取配置')
@click.option('--r', type=int, default=None, help='块宽度，默认取配置')
@click.option('--j', type=int, default=None, help='块偏移，默认取配置')
@click.option('--seed', type=int, default=None, help='基础种子，默认取 SPECTRAL_DK_SEED')
@click.option('--workers', type=int, default=None, help='线程数，默认取 EXPERIMENT_WORKERS')
@click.option('--out', type=click.Path(dir_okay=False, path_type=Path), default=None,
              help='CSV 输出路径（同时写出 <stem>.summary.json）')
@click.option('--format', 'output_format', type=click.Choice([item.value for item in OutputFormat]),
              default=OutputFormat.CSV.value, show_default=True, help='未指定 --out 时的标准输出格式')
@click.pass_context
@handle_errors
def dreg_experiment(ctx, n, d, replicates, r, j, seed, workers, out, output_format):
    """随机 d-正则图上比较 L 与 L_sym 的特征向量"""
    spec = experiment_service.default_spec(n=n, d=d, replicates=replicates, r=r, j=j, seed=seed,
                                           workers=workers)
    result = experiment_service.run(spec)

    if out is not None:
        paths = experiment_service.write_outputs(result, out)
        click.echo(io_service.to_json({key: str(path) for key, path in paths.items()}))
    elif output_format == OutputFormat.JSON.value:
        click.echo(io_service.to_json(result.summary()))
    else:
        click.echo(io_service.to_csv(result.frame()), nl=False)


# ============================================================================
# landscape
# ============================================================================

@cli.command()
@click.argument('phi_file', type=matrix_path)
@click.argument('psi_file', type=matrix_path)
@block_options
@search_options
@click.option('--norm', 'norm_kind', type=click.Choice([item.value for item in NormKind]),
              default=NormKind.RHO1.value, show_default=True)
@click.option('--out', type=click.Path(dir_okay=False, path_type=Path), default=None)
@click.option('--format', 'output_format', type=click.Choice([item.value for item in OutputFormat]),
              default=OutputFormat.CSV.value, show_default=True)
@click.pass_context
@handle_errors
def landscape(ctx, phi_file, psi_file, j, r, j_psi, grid_points, refinement_rounds, norm_kind, out,
              output_format):
    """在 (c1, c0) 网格上输出界景观"""
    mat_phi = io_service.read_matrix(phi_file)
    mat_psi = io_service.read_matrix(psi_file)
    cfg = _search_config(mat_phi, mat_psi, grid_points, refinement_rounds)
    cells = search_service.bound_landscape(mat_phi, mat_psi, j, r, cfg=cfg, j_psi=j_psi,
                                           norm_kind=norm_kind)

    if output_format == OutputFormat.JSON.value:
        text = io_service.to_json({'config': cfg.to_dict(),
                                   'cells': [cell.to_dict() for cell in cells]}) + "\n"
    else:
        frame = io_service.frame((cell.to_dict() for cell in cells), ReportSchema.LANDSCAPE_COLUMNS)
        text = io_service.to_csv(frame)
    _write_or_echo(text, out)


# ============================================================================
# export-operators
# ============================================================================

@cli.command('export-operators')
@click.option('--edges', type=click.Path(dir_okay=False, path_type=Path), default=None,
              help='边列表文件；未指定时生成随机正则图')
@click.option('--n', type=int, default=None, help='随机正则图节点数')
@click.option('--d', type=int, default=None, help='随机正则图的度')
@click.option('--seed', type=int, default=None, help='随机种子，默认取 SPECTRAL_DK_SEED')
@click.option('--out-dir', type=click.Path(file_okay=False, path_type=Path), required=True)
@click.pass_context
@handle_errors
def export_operators(ctx, edges, n, d, seed, out_dir):
    """写出图的 A、L、L_sym 矩阵文件与边列表"""
    if edges is not None:
        graph = io_service.read_edge_list(edges)
    else:
        if n is None or d is None:
            raise InvalidInput("未指定 --edges 时必须提供 --n 与 --d")
        graph = graph_service.random_regular(n, d, ctx.obj.DEFAULT_SEED if seed is None else seed)

    operators = graph_service.shift_operators(graph)
    paths = {
        'adjacency': io_service.write_matrix(out_dir / 'A.txt', operators.adjacency),
        'laplacian': io_service.write_matrix(out_dir / 'L.txt', operators.laplacian),
        'normalized_laplacian': io_service.write_matrix(out_dir / 'L_sym.txt', operators.normalized),
        'edges': io_service.write_edge_list(out_dir / 'edges.txt', graph),
    }
    payload = {key: str(path) for key, path in paths.items()}
    payload['n'] = graph.n
    payload['regular_degree'] = graph_service.regularity_check(graph)
    click.echo(io_service.to_json(payload))
