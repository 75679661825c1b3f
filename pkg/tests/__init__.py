"""
测试模块

包含所有单元测试、随机性质测试和命令行集成测试
"""
