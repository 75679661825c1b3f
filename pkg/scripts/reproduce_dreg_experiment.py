#!/usr/bin/env python3
"""
d-正则图实验复现脚本

运行 L 与 L_sym 特征向量比较实验，写出 CSV 与汇总 JSON，并逐项检查结果：
扩展界与实际 ρ1 接近 0、标准界严格大于扩展界、最优 c1 接近 1/d
"""

import os
import sys
from pathlib import Path

# 添加项目根目录到Python路径
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

EXT_BOUND_LIMIT = 1e-8
RHO1_LIMIT = 1e-6
C1_RELATIVE_TOLERANCE = 0.05
C0_LIMIT = 1e-6


def check_records(result):
    """逐个重复检查结果，返回不满足条件的描述列表"""
    d = result.spec.d
    problems = []
    for record in result.records:
        prefix = f"重复 {record.replicate}"
        if not record.ext_feasible:
            problems.append(f"{prefix}: 没有可行的仿射变换")
            continue
        if not record.ext_bound <= EXT_BOUND_LIMIT:
            problems.append(f"{prefix}: 扩展界 {record.ext_bound:.3e} > {EXT_BOUND_LIMIT:g}")
        if not record.rho1 <= RHO1_LIMIT:
            problems.append(f"{prefix}: ρ1 {record.rho1:.3e} > {RHO1_LIMIT:g}")
        if abs(record.c1 * d - 1.0) > C1_RELATIVE_TOLERANCE:
            problems.append(f"{prefix}: c1={record.c1:.6g} 偏离 1/{d}")
        if abs(record.c0) > C0_LIMIT:
            problems.append(f"{prefix}: |c0|={abs(record.c0):.3e} > {C0_LIMIT:g}")
        if record.thm4_feasible and not record.thm4_bound > record.ext_bound:
            problems.append(f"{prefix}: 标准界 {record.thm4_bound:.3e} 未超过扩展界")
    return problems


def reproduce(environment: str, out: Path) -> bool:
    """按指定环境的实验规模运行并检查"""
    from spectral_dk import create_context
    from spectral_dk.services.experiment_service import experiment_service

    create_context(environment)
    spec = experiment_service.default_spec()
    print(f"🔬 d-正则实验: n={spec.n}, d={spec.d}, 重复 {spec.replicates} 次, r={spec.r}, seed={spec.seed}")

    result = experiment_service.run(spec)
    paths = experiment_service.write_outputs(result, out)
    print(f"📄 CSV: {paths['csv']}")
    print(f"📄 汇总: {paths['summary']}")

    summary = result.summary()['columns']
    for column in ('rho1', 'thm4_bound', 'ext_bound', 'c1', 'c0'):
        stats = summary[column]
        print(f"  {column:>10}: min={stats['min']}, max={stats['max']}, mean={stats['mean']}")

    problems = check_records(result)
    if problems:
        print(f"\n❌ {len(problems)} 项检查未通过:")
        for problem in problems:
            print(f"  - {problem}")
        return False

    print(f"\n✅ 全部 {len(result.records)} 个重复通过检查")
    return True


def main():
    """主函数"""
    if len(sys.argv) > 1 and sys.argv[1] in ('-h', '--help'):
        print("d-正则图实验复现工具")
        print("\n用法:")
        print("  python scripts/reproduce_dreg_experiment.py [--quick] [out.csv]")
        print("\n  --quick   使用测试环境的缩减规模 (n=60, d=6, 10 个重复)")
        return

    args = sys.argv[1:]
    environment = 'production'
    if '--quick' in args:
        environment = 'testing'
        args.remove('--quick')
    out = Path(args[0]) if args else Path('results') / f"dreg_{environment}.csv"

    sys.exit(0 if reproduce(environment, out) else 1)


if __name__ == "__main__":
    main()
