#pragma once

#define MINEFAIR_VERSION "0.1.0"
