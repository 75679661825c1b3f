"""
谱变换服务层

提供多项式在标量、矩阵与谱上的求值，以及仿射变换的端点公式
"""

import logging
from typing import Tuple

import numpy as np

from spectral_dk.core.exceptions import DegenerateTransform, InvalidInput
from spectral_dk.core.validators import validate_block_indices
from spectral_dk.models.matrix import Spectrum, SymMatrix
from spectral_dk.models.transform import PolynomialTransform, TransformedSpectrum

logger = logging.getLogger(__name__)


class TransformService:
    """谱变换服务类"""

    # ============================================================================
    # 多项式求值
    # ============================================================================

    def eval_scalar(self, p: PolynomialTransform, x: float) -> float:
        """Horner 法求 p(x)"""
        return float(self.eval_values(p, x))

    def eval_values(self, p: PolynomialTransform, values):
        """对数组逐元素做 Horner 求值"""
        values = np.asarray(values, dtype=float)
        result = np.full_like(values, p.coefficients[-1])
        for coefficient in reversed(p.coefficients[:-1]):
            result = result * values + coefficient
        return result

    def eval_matrix(self, p: PolynomialTransform, m: SymMatrix) -> SymMatrix:
        """
        p(M) = c_l Mˡ + … + c₁M + c₀I

        Horner 形式逐次相乘，每次乘积后取 (X + Xᵀ)/2 以保持对称

        Args:
            p: 多项式变换
            m: 对称矩阵

        Returns:
            SymMatrix: p(M)
        """
        matrix = m.entries
        identity = np.eye(m.n)
        result = p.coefficients[-1] * identity
        for coefficient in reversed(p.coefficients[:-1]):
            product = result @ matrix
            result = (product + product.T) / 2.0 + coefficient * identity
        if not np.all(np.isfinite(result)):
            raise InvalidInput("多项式矩阵求值产生非有限值")
        return SymMatrix(result)

    def transform_spectrum(self, p: PolynomialTransform, s: Spectrum) -> TransformedSpectrum:
        """values[i] = p(φᵢ)，保持原始索引顺序"""
        return TransformedSpectrum(values=self.eval_values(p, s.eigenvalues), source=p)

    # ============================================================================
    # 仿射变换
    # ============================================================================

    @staticmethod
    def require_affine(f: PolynomialTransform) -> Tuple[float, float]:
        """检查 f 为 c₁ ≠ 0 的仿射变换，返回 (c₁, c₀)"""
        if not f.is_affine:
            raise InvalidInput(f"需要仿射变换，实际次数为 {f.degree}")
        if f.c1 == 0.0:
            logger.error(f"退化仿射变换: {f}")
            raise DegenerateTransform(details={'c0': f.c0})
        return f.c1, f.c0

    def affine_endpoints(self, f: PolynomialTransform, s: Spectrum, j: int,
                         r: int) -> Tuple[float, float, float, float]:
        """
        仿射变换下第 j、j+1、j+r、j+r+1 个特征值的像（按 c₁ 符号重排）

        Args:
            f: 仿射变换 c₁x + c₀
            s: 原始谱
            j: 块偏移
            r: 块宽度

        Returns:
            tuple: (max A₂ 端点, 块内最小值, 块内最大值, min A₁ 端点)
        """
        c1, c0 = self.require_affine(f)
        validate_block_indices(s.n, j, r)

        def image(k: int) -> float:
            phi = s.eigenvalue(k)
            if np.isinf(phi):
                return float(np.sign(c1) * phi)
            return c1 * phi + c0

        if c1 > 0:
            return image(j), image(j + 1), image(j + r), image(j + r + 1)
        return image(j + r + 1), image(j + r), image(j + 1), image(j)


# 创建全局谱变换服务实例
transform_service = TransformService()
