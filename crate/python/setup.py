"""Builds the Rust extension with cargo and ships it inside the package."""

import shutil
import subprocess
from pathlib import Path

from setuptools import setup
from setuptools.command.build_py import build_py

REPO_ROOT = Path(__file__).resolve().parent.parent


class build_native(build_py):
    def run(self):
        subprocess.run(
            ["cargo", "build", "--release", "-p", "modrep-py"],
            cwd=REPO_ROOT,
            check=True,
        )
        built = REPO_ROOT / "target" / "release" / "libmodrep_native.so"
        dest = Path(__file__).resolve().parent / "modrep" / "_native.so"
        shutil.copy2(built, dest)
        super().run()


setup(cmdclass={"build_py": build_native})
