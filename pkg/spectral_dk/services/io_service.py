"""
文件读写服务层

提供矩阵文件、边列表文件的解析与写出，以及 JSON 报告和 CSV 表格输出
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from spectral_dk.core.constants import FileFormat, ReportSchema
from spectral_dk.core.exceptions import InvalidInput, ParseError
from spectral_dk.core.utils import json_float
from spectral_dk.models.graph import Graph
from spectral_dk.models.matrix import SymMatrix
from spectral_dk.services.linalg_service import linalg_service

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


class IOService:
    """文件读写服务类"""

    # ============================================================================
    # 文本解析
    # ============================================================================

    @staticmethod
    def _content_lines(path: PathLike) -> List[Tuple[int, str]]:
        """读取文件，去掉空行与 '#' 注释，返回 (行号, 内容)"""
        try:
            text = Path(path).read_text(encoding='utf-8')
        except OSError as e:
            logger.error(f"无法读取文件 {path}: {e}")
            raise ParseError(f"无法读取文件: {path}", details={'path': str(path)}) from e

        lines = []
        for number, raw in enumerate(text.splitlines(), start=1):
            content = raw.split(FileFormat.COMMENT_PREFIX, 1)[0].strip()
            if content:
                lines.append((number, content))
        return lines

    @staticmethod
    def _parse_header(lines: List[Tuple[int, str]], path: PathLike) -> int:
        if not lines:
            raise ParseError(f"文件为空: {path}", details={'path': str(path)})
        number, content = lines[0]
        parts = content.split()
        if len(parts) != 2 or parts[0] != FileFormat.HEADER_KEY:
            raise ParseError(f"第 {number} 行应为 \"n <count>\" 头部: {content}",
                             details={'path': str(path), 'line': number})
        try:
            count = int(parts[1])
        except ValueError:
            raise ParseError(f"第 {number} 行的维数不是整数: {parts[1]}",
                             details={'path': str(path), 'line': number})
        if count < 1:
            raise ParseError(f"维数必须至少为 1: {count}", details={'path': str(path)})
        return count

    # ============================================================================
    # 矩阵文件
    # ============================================================================

    def read_matrix(self, path: PathLike, symmetry_tolerance: Optional[float] = None) -> SymMatrix:
        """
        读取矩阵文件：头部 "n <count>"，随后 n 行、每行 n 个十进制数

        Args:
            path: 文件路径
            symmetry_tolerance: 允许的最大非对称量，默认取 SYMMETRY_TOLERANCE

        Returns:
            SymMatrix: 对称矩阵
        """
        lines = self._content_lines(path)
        n = self._parse_header(lines, path)
        rows = lines[1:]
        if len(rows) != n:
            raise ParseError(f"矩阵应有 {n} 行，实际 {len(rows)} 行",
                             details={'path': str(path), 'expected': n, 'actual': len(rows)})

        values = np.empty((n, n))
        for i, (number, content) in enumerate(rows):
            parts = content.split()
            if len(parts) != n:
                raise ParseError(f"第 {number} 行应有 {n} 个数，实际 {len(parts)} 个",
                                 details={'path': str(path), 'line': number})
            try:
                values[i] = [float(part) for part in parts]
            except ValueError:
                raise ParseError(f"第 {number} 行包含无法解析的数值",
                                 details={'path': str(path), 'line': number})

        if not np.all(np.isfinite(values)):
            raise InvalidInput(f"矩阵文件包含非有限值: {path}", details={'path': str(path)})
        logger.debug(f"已读取 {n}×{n} 矩阵: {path}")
        return linalg_service.symmetric(values, tolerance=symmetry_tolerance)

    def write_matrix(self, path: PathLike, m: SymMatrix) -> Path:
        """按矩阵文件格式写出，数值保留 17 位有效数字"""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        lines = [f"{FileFormat.HEADER_KEY} {m.n}"]
        lines.extend(" ".join(ReportSchema.FLOAT_FORMAT % value for value in row) for row in m.entries)
        path.write_text("\n".join(lines) + "\n", encoding='utf-8')
        logger.info(f"已写出 {m.n}×{m.n} 矩阵: {path}")
        return path

    # ============================================================================
    # 边列表文件
    # ============================================================================

    def read_edge_list(self, path: PathLike) -> Graph:
        """读取边列表文件：头部 "n <count>"，每行 "u v"（0 基节点编号）"""
        lines = self._content_lines(path)
        n = self._parse_header(lines, path)
        edges = []
        for number, content in lines[1:]:
            parts = content.split()
            if len(parts) != 2:
                raise ParseError(f"第 {number} 行应为 \"u v\": {content}",
                                 details={'path': str(path), 'line': number})
            try:
                edges.append((int(parts[0]), int(parts[1])))
            except ValueError:
                raise ParseError(f"第 {number} 行的节点编号不是整数: {content}",
                                 details={'path': str(path), 'line': number})
        logger.debug(f"已读取边列表: n={n}, 边数={len(edges)}")
        return Graph.from_edges(n, edges)

    def write_edge_list(self, path: PathLike, g: Graph) -> Path:
        """按边列表格式写出，边按 (u, v) 排序"""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        lines = [f"{FileFormat.HEADER_KEY} {g.n}"]
        lines.extend(f"{u} {v}" for u, v in g.sorted_edges())
        path.write_text("\n".join(lines) + "\n", encoding='utf-8')
        logger.info(f"已写出边列表: {path}")
        return path

    # ============================================================================
    # 报告输出
    # ============================================================================

    @staticmethod
    def to_json(payload: Dict[str, Any]) -> str:
        """序列化 JSON 报告，确保包含 schema 版本"""
        document = {'schema': ReportSchema.VERSION}
        document.update(payload)
        return json.dumps(document, ensure_ascii=False, indent=2, sort_keys=False)

    def write_json(self, path: PathLike, payload: Dict[str, Any]) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.to_json(payload) + "\n", encoding='utf-8')
        logger.info(f"已写出 JSON 报告: {path}")
        return path

    @staticmethod
    def frame(rows: Iterable[Dict[str, Any]], columns: Sequence[str]) -> pd.DataFrame:
        """按固定列顺序构造表格"""
        return pd.DataFrame(list(rows), columns=list(columns))

    @staticmethod
    def to_csv(frame: pd.DataFrame) -> str:
        return frame.to_csv(index=False, float_format=ReportSchema.FLOAT_FORMAT, lineterminator="\n")

    def write_csv(self, path: PathLike, frame: pd.DataFrame) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.to_csv(frame), encoding='utf-8')
        logger.info(f"已写出 CSV: {path} ({len(frame)} 行)")
        return path

    @staticmethod
    def column_summary(frame: pd.DataFrame, columns: Sequence[str]) -> Dict[str, Dict[str, Any]]:
        """每列的 min / max / mean"""
        summary = {}
        for column in columns:
            values = pd.to_numeric(frame[column], errors='coerce')
            summary[column] = {
                'min': json_float(values.min()),
                'max': json_float(values.max()),
                'mean': json_float(values.mean()),
            }
        return summary


# 创建全局文件读写服务实例
io_service = IOService()
