"""
命令行主入口文件

用法: python -m spectral_dk.main <command> [options]
"""

import os
import sys

# 添加项目根目录到Python路径
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from spectral_dk.cli import cli


def main():
    cli(prog_name='spectral-dk')


if __name__ == '__main__':
    main()
