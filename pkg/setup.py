import os
from setuptools import setup, find_packages


# Get the README.md text
with open(os.path.join(os.path.dirname(__file__), 'README.md'), 'r', encoding='utf-8') as f:
    readme = f.read()

# Parse quditmagic/__init__.py for a version
with open(os.path.join(os.path.dirname(__file__), 'quditmagic/__init__.py'), 'r') as f:
    for line in f:
        if line.startswith('__version__'):
            version = eval(line.split('=')[1].strip())
            break
    else:
        raise RuntimeError('no version found')

# Get the pip requirements
with open(os.path.join(os.path.dirname(__file__), 'requirements.txt'), 'r') as f:
    requirements = [line.strip() for line in f if line.strip()]

setup(
    name = 'quditmagic',
    packages = find_packages(exclude=['tests']),
    version = version,
    license='MIT',
    description = 'Wigner negativity, mana and stabilizer entropy of random qudit circuits, with minimal cut predictions.',
    long_description=readme,
    long_description_content_type='text/markdown',
    keywords = [
        'qudit', 'magic', 'mana', 'wigner', 'negativity', 'clifford', 'haar',
        'random circuit', 'weingarten', 'stabilizer', 'min cut', 'domain wall',
    ],
    install_requires=requirements,
    extras_require={'test': ['pytest']},
    entry_points={'console_scripts': ['quditmagic = quditmagic.cli:main']},
    classifiers=[
        'Development Status :: 3 - Alpha',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: MIT License',
        'Operating System :: OS Independent',
        'Programming Language :: Python',
        'Programming Language :: Python :: 3',
        'Topic :: Scientific/Engineering :: Physics',
    ],
    python_requires=('>=3.7'),
)
