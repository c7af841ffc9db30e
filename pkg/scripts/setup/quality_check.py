"""
Quality assurance and environment validation script
"""

import subprocess
from pathlib import Path

SETTINGS_PREFIX = "SUPERHOMOG_"


def run_quality_checks():
    """Run comprehensive quality checks"""

    print("🔍 Running quality assurance checks...")

    # Code formatting
    print("📝 Checking code formatting...")
    subprocess.run(["uv", "run", "black", "--check", "."], check=False)

    # Import sorting
    print("📋 Checking import organization...")
    subprocess.run(["uv", "run", "isort", "--check-only", "."], check=False)

    # Type checking
    print("🔍 Running type checks...")
    subprocess.run(
        ["uv", "run", "mypy", "algebra/", "geometry/", "cohomology/", "classification/"],
        check=False,
    )

    # Golden file regression
    print("🧪 Checking the classification golden file...")
    subprocess.run(["uv", "run", "pytest", "tests/test_classifier.py", "-q"], check=False)

    # Settings overrides
    print("⚙️  Checking .env settings...")
    env_file = Path(".env")
    if env_file.exists():
        with open(env_file) as f:
            for line in f:
                name = line.split("=", 1)[0].strip()
                if name and not name.startswith("#") and not name.startswith(SETTINGS_PREFIX):
                    print(f"⚠️  Warning: {name} is not a {SETTINGS_PREFIX}* setting")

    print("✅ Quality checks complete!")


if __name__ == "__main__":
    run_quality_checks()
