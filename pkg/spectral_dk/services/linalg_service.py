"""
稠密线性代数服务层

提供对称特征分解、小矩阵奇异值分解以及谱范数、Frobenius 范数
"""

import logging
from typing import Optional, Tuple, Type, Union

import numpy as np

from spectral_dk.core.config_manager import config_manager
from spectral_dk.core.constants import EigenSolver
from spectral_dk.core.decorators import wrap_unexpected
from spectral_dk.core.exceptions import InvalidInput
from spectral_dk.core.validators import ChoiceValidator, ensure_finite
from spectral_dk.models.matrix import SingularValueDecomposition, Spectrum, SymMatrix

logger = logging.getLogger(__name__)

MatrixLike = Union[SymMatrix, np.ndarray]

_solver_validator = ChoiceValidator(EigenSolver)


def _entries(m: MatrixLike) -> np.ndarray:
    if isinstance(m, SymMatrix):
        return m.entries
    return ensure_finite(m, "矩阵")


class LinalgService:
    """线性代数服务类 - 特征分解与矩阵范数"""

    def __init__(self, settings: Optional[Type] = None):
        """
        初始化线性代数服务

        Args:
            settings: 可选的配置类，如果不提供则使用当前激活的配置
        """
        self.settings = settings

    def _get_settings(self) -> Type:
        """获取配置"""
        if self.settings is not None:
            return self.settings
        return config_manager.settings

    # ============================================================================
    # 对称矩阵
    # ============================================================================

    def symmetric(self, values, tolerance: Optional[float] = None) -> SymMatrix:
        """
        构造对称矩阵；非对称程度低于容差时对称化并告警，否则拒绝

        Args:
            values: 方阵数据
            tolerance: 允许的最大非对称量 max|M − Mᵀ|，默认取 SYMMETRY_TOLERANCE

        Returns:
            SymMatrix: 对称化后的矩阵
        """
        array = ensure_finite(values, "矩阵")
        if array.ndim != 2 or array.shape[0] != array.shape[1]:
            raise InvalidInput(f"矩阵必须是方阵，实际形状为 {array.shape}")
        if tolerance is None:
            tolerance = self._get_settings().SYMMETRY_TOLERANCE

        asymmetry = float(np.max(np.abs(array - array.T))) if array.size else 0.0
        if asymmetry >= tolerance:
            logger.error(f"矩阵非对称量 {asymmetry:.3e} 超出容差 {tolerance:.1e}")
            raise InvalidInput(f"矩阵不是对称矩阵 (非对称量 {asymmetry:.3e})",
                               details={'asymmetry': asymmetry, 'tolerance': tolerance})
        if asymmetry > 0:
            logger.warning(f"矩阵存在微小非对称量 {asymmetry:.3e}，已执行对称化")
        return SymMatrix(array)

    # ============================================================================
    # 特征分解
    # ============================================================================

    @wrap_unexpected(InvalidInput, "特征分解失败")
    def eig_sym(self, m: SymMatrix, method: Optional[Union[str, EigenSolver]] = None) -> Spectrum:
        """
        对称特征分解，特征值升序，特征向量采用固定符号约定

        Args:
            m: 对称矩阵
            method: lapack 或 jacobi，默认取 EIGEN_SOLVER 配置

        Returns:
            Spectrum: 谱分解结果
        """
        matrix = _entries(m)
        solver = _solver_validator.validate(method or self._get_settings().EIGEN_SOLVER, "特征分解方法")

        if solver == EigenSolver.JACOBI:
            eigenvalues, eigenvectors = self._jacobi_eigh(matrix)
        else:
            eigenvalues, eigenvectors = np.linalg.eigh(matrix)

        order = np.argsort(eigenvalues, kind='stable')
        eigenvalues = eigenvalues[order]
        eigenvectors = self._fix_signs(eigenvectors[:, order])
        return Spectrum(eigenvalues=eigenvalues, eigenvectors=eigenvectors)

    def eigenvalues(self, m: MatrixLike) -> np.ndarray:
        """只计算升序特征值"""
        return np.linalg.eigvalsh(_entries(m))

    def _jacobi_eigh(self, matrix: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """循环 Jacobi 旋转；非对角 Frobenius 质量 <= JACOBI_TOLERANCE·‖M‖_F 时收敛"""
        settings = self._get_settings()
        a = np.array(matrix, dtype=float, copy=True)
        n = a.shape[0]
        v = np.eye(n)
        threshold = settings.JACOBI_TOLERANCE * np.linalg.norm(a, 'fro')

        for sweep in range(settings.JACOBI_MAX_SWEEPS):
            off = np.sqrt(max(np.sum(a * a) - np.sum(np.diag(a) ** 2), 0.0))
            if off <= threshold:
                logger.debug(f"Jacobi 迭代在第 {sweep} 轮收敛 (n={n})")
                break
            for p in range(n - 1):
                for q in range(p + 1, n):
                    apq = a[p, q]
                    if apq == 0.0:
                        continue
                    theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                    t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                    c = 1.0 / np.sqrt(t * t + 1.0)
                    s = t * c

                    col_p = a[:, p].copy()
                    col_q = a[:, q].copy()
                    a[:, p] = c * col_p - s * col_q
                    a[:, q] = s * col_p + c * col_q
                    row_p = a[p, :].copy()
                    row_q = a[q, :].copy()
                    a[p, :] = c * row_p - s * row_q
                    a[q, :] = s * row_p + c * row_q
                    a[p, q] = a[q, p] = 0.0

                    vec_p = v[:, p].copy()
                    vec_q = v[:, q].copy()
                    v[:, p] = c * vec_p - s * vec_q
                    v[:, q] = s * vec_p + c * vec_q
        else:
            logger.warning(f"Jacobi 迭代达到最大轮数 {settings.JACOBI_MAX_SWEEPS} 仍未收敛")

        return np.diag(a).copy(), v

    @staticmethod
    def _fix_signs(vectors: np.ndarray) -> np.ndarray:
        """每列绝对值最大的分量取正；最大值并列时第一个非零分量取正"""
        fixed = np.array(vectors, copy=True)
        for k in range(fixed.shape[1]):
            column = fixed[:, k]
            magnitudes = np.abs(column)
            peak = magnitudes.max()
            if peak == 0.0:
                continue
            candidates = np.flatnonzero(magnitudes >= peak * (1.0 - 1e-12))
            if len(candidates) == 1:
                pivot = candidates[0]
            else:
                pivot = np.flatnonzero(magnitudes > 0.0)[0]
            if column[pivot] < 0:
                fixed[:, k] = -column
        return fixed

    # ============================================================================
    # 奇异值分解与范数
    # ============================================================================

    @wrap_unexpected(InvalidInput, "奇异值分解失败")
    def svd_small(self, m) -> SingularValueDecomposition:
        """
        小矩阵奇异值分解

        Args:
            m: r×c 稠密矩阵

        Returns:
            SingularValueDecomposition: 奇异值降序
        """
        matrix = np.atleast_2d(ensure_finite(m, "矩阵"))
        if matrix.ndim != 2 or min(matrix.shape) < 1:
            raise InvalidInput(f"奇异值分解需要非空二维矩阵，实际形状为 {matrix.shape}")
        left, values, right_t = np.linalg.svd(matrix, full_matrices=False)
        return SingularValueDecomposition(left=left, values=values, right_t=right_t)

    def spectral_norm(self, m: MatrixLike) -> float:
        """对称矩阵的谱范数 max(|λ_min|, |λ_max|)"""
        eigenvalues = self.eigenvalues(m)
        return float(max(abs(eigenvalues[0]), abs(eigenvalues[-1])))

    def frobenius_norm(self, m) -> float:
        """Frobenius 范数"""
        matrix = m.entries if isinstance(m, SymMatrix) else ensure_finite(m, "矩阵")
        return float(np.linalg.norm(matrix))


# 创建全局线性代数服务实例
linalg_service = LinalgService()
