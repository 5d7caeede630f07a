import os

import django

os.environ.setdefault("DJANGO_SETTINGS_MODULE", "padj.settings")
django.setup()
