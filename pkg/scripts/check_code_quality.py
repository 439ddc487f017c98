#!/usr/bin/env python3
"""
代码质量检查脚本

运行格式、风格、类型检查和单元测试，并用少量样本跑一次 verify 命令。
"""

import subprocess
import sys
from pathlib import Path

PACKAGE = "monopole_quantization"


def run_command(cmd, description):
    """运行命令并返回结果"""
    print(f"\n🔍 {description}")
    print(f"运行命令: {' '.join(cmd)}")
    print("-" * 50)

    try:
        result = subprocess.run(cmd, capture_output=True, text=True, check=False)

        if result.stdout:
            print(result.stdout)
        if result.stderr:
            print("STDERR:", result.stderr)

        if result.returncode == 0:
            print(f"✅ {description} - 通过")
            return True
        else:
            print(f"❌ {description} - 失败 (返回码: {result.returncode})")
            return False

    except FileNotFoundError:
        print(f"⚠️  工具未找到，跳过 {description}")
        return True


def check_project_structure():
    """检查项目结构: 每个子包都有对应的测试包"""
    print("\n📁 检查项目结构")
    print("-" * 50)

    required_files = [
        "README.md",
        "DESIGN.md",
        "run_tests.py",
        "tests/__init__.py",
        f"tests/{PACKAGE}/__init__.py",
    ]
    for init_file in sorted(Path(PACKAGE).rglob("__init__.py")):
        required_files.append(str(init_file))
        required_files.append(str(Path("tests") / init_file))

    missing_files = [path for path in required_files if not Path(path).exists()]

    if missing_files:
        print("❌ 缺少以下必需文件:")
        for file_path in missing_files:
            print(f"  - {file_path}")
        return False
    print("✅ 项目结构检查通过")
    return True


def check_init_files():
    """检查 __init__.py 文件是否为空或只包含注释"""
    print("\n📦 检查 __init__.py 文件 (应该为空或只包含注释)")
    print("-" * 50)

    violations = []
    for root in (PACKAGE, "tests"):
        for init_file in Path(root).rglob("__init__.py"):
            lines = [
                line.strip()
                for line in init_file.read_text().splitlines()
                if line.strip() and not line.strip().startswith('#')
            ]
            if lines:
                violations.append(init_file)
                print(f"❌ {init_file} 包含非注释代码:")
                for line in lines[:3]:
                    print(f"    {line}")

    if violations:
        print(f"\n❌ 发现 {len(violations)} 个不符合规范的 __init__.py 文件")
        print("建议: 保持 __init__.py 文件为空或只包含注释，使用具体的导入路径")
        return False
    print("✅ 所有 __init__.py 文件都符合规范")
    return True


def main():
    """主函数"""
    print("🚀 Monopole Quantization 代码质量检查")
    print("=" * 60)

    # 确保在项目根目录
    if not Path(PACKAGE).exists():
        print("❌ 请在项目根目录运行此脚本")
        sys.exit(1)

    checks = [
        check_project_structure(),
        check_init_files(),
        run_command(
            [sys.executable, "-m", "black", "--check", "--diff", PACKAGE, "tests"],
            "代码格式检查 (Black)",
        ),
        run_command(
            [sys.executable, "-m", "flake8", "--max-line-length", "88"]
            + [PACKAGE, "tests"],
            "代码风格检查 (Flake8)",
        ),
        run_command([sys.executable, "-m", "mypy", PACKAGE], "类型检查 (MyPy)"),
        run_command([sys.executable, "run_tests.py"], "单元测试"),
        run_command(
            [
                sys.executable,
                "-m",
                f"{PACKAGE}.verification.cli",
                "--samples",
                "200",
                "--workers",
                "4",
            ],
            "冒烟验证 (verify)",
        ),
    ]

    # 总结
    print("\n" + "=" * 60)
    print("📊 检查结果总结")
    print("=" * 60)

    passed = sum(checks)
    total = len(checks)

    print(f"通过: {passed}/{total}")

    if passed == total:
        print("🎉 所有检查都通过了！代码质量良好。")
        sys.exit(0)
    else:
        print("❌ 有些检查未通过，请修复后重新运行。")
        sys.exit(1)


if __name__ == "__main__":
    main()
