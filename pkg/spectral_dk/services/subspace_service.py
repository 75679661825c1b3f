"""
子空间度量服务层

提供典型角、ρ1（Procrustes 对齐 Frobenius 距离）、ρ2（最大典型角正弦）、
Lemma 形式的常数 c_{n,r} 以及最优对齐正交矩阵
"""

import logging
import math
from typing import Optional, Type

import numpy as np

from spectral_dk.core.config_manager import config_manager
from spectral_dk.core.exceptions import InvalidInput, ShapeError
from spectral_dk.core.validators import IntegerValidator
from spectral_dk.models.subspace import CanonicalAngles, EigenvectorBlock
from spectral_dk.services.linalg_service import linalg_service

logger = logging.getLogger(__name__)


class SubspaceService:
    """子空间度量服务类"""

    def __init__(self, settings: Optional[Type] = None):
        self.settings = settings

    def _get_settings(self) -> Type:
        """获取配置"""
        if self.settings is not None:
            return self.settings
        return config_manager.settings

    @staticmethod
    def _check_compatible(w: EigenvectorBlock, v: EigenvectorBlock):
        if w.n != v.n or w.r != v.r:
            logger.error(f"特征向量块维度不匹配: {w.basis.shape} vs {v.basis.shape}")
            raise ShapeError(f"特征向量块维度不匹配: {w.basis.shape} vs {v.basis.shape}",
                             details={'w': list(w.basis.shape), 'v': list(v.basis.shape)})

    # ============================================================================
    # 典型角
    # ============================================================================

    def canonical_angle_cosines(self, w: EigenvectorBlock, v: EigenvectorBlock) -> CanonicalAngles:
        """
        计算两个子空间的典型角

        余弦取 VᵀW 的奇异值；正弦取 W − V(VᵀW) 的奇异值，避免 √(1 − α²) 的抵消误差。
        只保留最大的 min(r, n−r) 个角。

        Args:
            w: 第一个特征向量块
            v: 第二个特征向量块

        Returns:
            CanonicalAngles: 余弦降序、正弦与之逐项对应
        """
        self._check_compatible(w, v)
        n, r = w.n, w.r
        count = min(r, n - r)
        tolerance = self._get_settings().COSINE_TOLERANCE

        product = v.basis.T @ w.basis
        cosines = linalg_service.svd_small(product).values
        if cosines.size and (cosines.max() > 1.0 + tolerance or cosines.min() < -tolerance):
            logger.error(f"典型角余弦超出 [0, 1]: [{cosines.min():.3e}, {cosines.max():.3e}]")
            raise InvalidInput("典型角余弦超出 [0, 1]，输入的列可能不是标准正交的",
                               details={'min': float(cosines.min()), 'max': float(cosines.max())})
        cosines = np.clip(cosines, 0.0, 1.0)

        if count == 0:
            return CanonicalAngles(cosines=np.empty(0), sines=np.empty(0))

        residual = w.basis - v.basis @ product
        sines = np.clip(linalg_service.svd_small(residual).values[:count], 0.0, 1.0)
        # 最小的 count 个余弦（降序）与最大的 count 个正弦（升序）一一对应
        return CanonicalAngles(cosines=cosines[r - count:], sines=sines[::-1])

    # ============================================================================
    # 子空间距离
    # ============================================================================

    def rho1(self, w: EigenvectorBlock, v: EigenvectorBlock) -> float:
        """ρ1 = [2 Σ(1 − αᵢ)]^{1/2}，以 1 − α = β² / (1 + α) 计算"""
        angles = self.canonical_angle_cosines(w, v)
        one_minus = angles.sines ** 2 / (1.0 + angles.cosines)
        return float(math.sqrt(2.0 * float(np.sum(one_minus))))

    def rho2(self, w: EigenvectorBlock, v: EigenvectorBlock) -> float:
        """ρ2 = ‖WWᵀ(I − VVᵀ)‖₂ = 最大典型角正弦"""
        angles = self.canonical_angle_cosines(w, v)
        return float(angles.sines.max()) if angles.count else 0.0

    def c_factor(self, n: int, r: int) -> float:
        """c_{n,r} = √(2·min(r, n − r))"""
        n = IntegerValidator(min_value=1).validate(n, "维数 n")
        r = IntegerValidator(min_value=1, max_value=n).validate(r, "块宽度 r")
        return math.sqrt(2.0 * min(r, n - r))

    def alignment_matrix(self, w: EigenvectorBlock, v: EigenvectorBlock) -> np.ndarray:
        """
        最小化 ‖W − VQ‖_F 的正交矩阵 Q

        Args:
            w: 第一个特征向量块
            v: 第二个特征向量块

        Returns:
            np.ndarray: r×r 正交矩阵 Y·Uᵀ，其中 VᵀW = Y·Σ·Uᵀ
        """
        self._check_compatible(w, v)
        decomposition = linalg_service.svd_small(v.basis.T @ w.basis)
        return decomposition.left @ decomposition.right_t

    def spans_coincide(self, w: EigenvectorBlock, v: EigenvectorBlock) -> bool:
        """ρ2 <= COINCIDENCE_TOLERANCE 时认为两个子空间重合"""
        return self.rho2(w, v) <= self._get_settings().COINCIDENCE_TOLERANCE


# 创建全局子空间服务实例
subspace_service = SubspaceService()
